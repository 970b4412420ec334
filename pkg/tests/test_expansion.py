import json
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pinwheel.checks import EXAMPLE_TERMS, compositions, term_violations
from pinwheel.expansion import (
    OmegaMonomial,
    PinwheelTerm,
    evaluate_pinwheel_term,
    expand_graph_formula,
    integrate_expansion,
    simplify_terms,
    terms_from_json,
    terms_to_json,
    terms_to_latex,
    terms_to_plain,
)
from pinwheel.numeric import omega_top
from pinwheel.partitions import SetPartition, codimension, part_weights
from pinwheel.psi import psi_top

EX = OmegaMonomial(2, (3, 2, 0))


def P(*parts):
    return SetPartition.from_parts(parts)


@pytest.mark.parametrize("g, k", [(1, 0), (1, 4), (3, 7)])
def test_single_mark(g, k):
    (t,) = expand_graph_formula(OmegaMonomial(g, (k,)))
    assert t.canonical() == (((1,),), 1, (k,), (0,))


def test_example_simplified_matches_paper_structure():
    terms = expand_graph_formula(EX, simplify=True)
    assert Counter(t.canonical() for t in terms) == Counter(EXAMPLE_TERMS)
    assert len({t.partition for t in terms}) == 5
    assert len(terms) == 6


def test_example_misprinted_exponents_are_inhomogeneous():
    # as printed: -psi_bullet^4 psi_2^2 on {1,3}{2} and -psi_1^3 psi_bullet^2 on {1}{2,3}
    printed = [
        PinwheelTerm(P((1, 3), (2,)), -1, (4, 2)),
        PinwheelTerm(P((1,), (2, 3)), -1, (3, 2)),
    ]
    assert [t.degree for t in printed] == [7, 6]
    assert all(term_violations(EX, t) for t in printed)


def test_example_full_series():
    terms = expand_graph_formula(EX)
    per_stratum = Counter(str(t.partition) for t in terms)
    # series length is alpha_j for each non-singleton part
    assert per_stratum == {"{1}{2}{3}": 1, "{1,2}{3}": 5, "{1,3}{2}": 3, "{1}{2,3}": 2, "{1,2,3}": 5}
    assert Counter(t.canonical() for t in simplify_terms(terms)) == Counter(EXAMPLE_TERMS)


def test_example_term_order():
    terms = expand_graph_formula(EX)
    assert terms[0].partition.is_trivial()
    tails = [t.tail_exponents[0] for t in terms if t.partition == P((1, 2, 3))]
    assert tails == sorted(tails) == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("n", range(1, 6))
def test_base_case_single_omega(n):
    m = OmegaMonomial(2, (1,) + (0,) * (n - 1))
    terms = expand_graph_formula(m)
    head, rest = terms[0], terms[1:]
    assert head.canonical()[1:] == (1, (1,) + (0,) * (n - 1), (0,) * n)
    # every subset B containing 1 with |B| >= 2 gives one boundary divisor with coefficient -1
    assert len(rest) == 2 ** (n - 1) - 1
    for t in rest:
        assert t.sign == -1 and codimension(t.partition) == 1
        assert 1 in next(p for p in t.partition.parts if len(p) > 1)
        assert sum(t.spine_exponents) == sum(t.tail_exponents) == 0


def test_zero_monomial_only_trivial_stratum():
    terms = expand_graph_formula(OmegaMonomial(1, (0, 0)))
    assert [t.canonical() for t in terms] == [(((1,), (2,)), 1, (0, 0), (0, 0))]
    assert terms_to_plain(terms) == "+1"


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_term_invariants(g, k):
    m = OmegaMonomial(g, tuple(k))
    for t in expand_graph_formula(m):
        assert term_violations(m, t) == []
        assert t.degree == m.degree
        alphas = part_weights(t.partition, m.exponents)
        assert all(a > 0 for p, a in zip(t.partition.parts, alphas) if len(p) > 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_simplify_keeps_only_low_tail_powers(g, k):
    m = OmegaMonomial(g, tuple(k))
    full = expand_graph_formula(m)
    short = expand_graph_formula(m, simplify=True)
    assert short == simplify_terms(full)
    for t in short:
        assert all(len(p) == 1 or b <= len(p) - 2 for p, b in zip(t.partition.parts, t.tail_exponents))


@pytest.mark.parametrize("g, k", [(0, (1,)), (1, ()), (1, (1, -1))])
def test_invalid_monomials(g, k):
    with pytest.raises(ValueError):
        OmegaMonomial(g, k)


def test_invalid_terms():
    with pytest.raises(ValueError):
        PinwheelTerm(P((1,), (2,)), 1, (0, 0), (1, 0))
    with pytest.raises(ValueError):
        PinwheelTerm(P((1, 2)), 0, (1,))
    with pytest.raises(ValueError):
        PinwheelTerm(P((1, 2)), 1, (1, 1))


# -- evaluation ----------------------------------------------------------------


def test_evaluate_wrong_degree_is_zero():
    assert evaluate_pinwheel_term(1, 2, PinwheelTerm(P((1, 2)), -1, (0,), (0,))) == 0


def test_evaluate_single_tail():
    t = PinwheelTerm(P((1, 2)), -1, (1,), (0,))
    assert evaluate_pinwheel_term(1, 2, t) == -Fraction(1, 24)


def test_evaluate_wrong_tail_power_is_zero():
    t = PinwheelTerm(P((1, 2, 3)), -1, (2,), (0,))
    assert t.degree == 3 == 3 * 1 - 3 + 3
    assert evaluate_pinwheel_term(1, 3, t) == 0


def test_evaluate_matching_tail_power():
    t = PinwheelTerm(P((1, 2, 3)), 1, (1,), (1,))
    assert evaluate_pinwheel_term(1, 3, t) == psi_top(1, (1,))


def test_evaluate_rejects_wrong_n():
    with pytest.raises(ValueError):
        evaluate_pinwheel_term(1, 3, PinwheelTerm(P((1, 2)), 1, (1,), (0,)))


def test_integrate_examples():
    assert integrate_expansion(OmegaMonomial(1, (1, 1))) == 0
    assert integrate_expansion(OmegaMonomial(1, (1,))) == Fraction(1, 24)
    # <tau_2^3>_2 - (3 <tau_3 tau_2>_2) + <tau_4>_2 from published tables
    assert integrate_expansion(OmegaMonomial(2, (2, 2, 2))) == Fraction(7, 240) - 3 * Fraction(29, 5760) + Fraction(1, 1152)
    assert integrate_expansion(OmegaMonomial(2, (2, 2, 2))) == Fraction(43, 2880)


def test_integrate_off_degree_is_zero():
    assert integrate_expansion(EX) == 0


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_integrate_matches_omega_top(g, n):
    for k in compositions(3 * g - 3 + n, n):
        m = OmegaMonomial(g, k)
        assert integrate_expansion(m) == omega_top(m)


# -- serialization -------------------------------------------------------------


def test_json_roundtrip():
    terms = expand_graph_formula(EX)
    text = json.dumps(terms_to_json(terms))
    assert terms_from_json(json.loads(text)) == terms


def test_latex_example():
    text = terms_to_latex(expand_graph_formula(EX, simplify=True))
    assert text == (
        r"\psi_{1}^{3} \psi_{2}^{2}"
        r" - \psi_\bullet^{4} [\Delta_{\{1,2\}\{3\}}]"
        r" - \psi_\bullet^{2} \psi_{2}^{2} [\Delta_{\{1,3\}\{2\}}]"
        r" - \psi_{1}^{3} \psi_\bullet [\Delta_{\{1\}\{2,3\}}]"
        r" - (\psi_\bullet^{4} - \psi_\bullet^{3} \psi_\star) [\Delta_{\{1,2,3\}}]"
    )


def test_latex_indexes_flags_with_two_tails():
    terms = expand_graph_formula(OmegaMonomial(2, (2, 1, 1, 1)))
    two_tails = [t for t in terms if str(t.partition) == "{1,2}{3,4}"]
    assert terms_to_latex(two_tails) == (
        r"(\psi_{\bullet_{1}}^{2} \psi_{\bullet_{2}} - \psi_{\bullet_{1}}^{2} \psi_{\star_{2}}"
        r" - \psi_{\bullet_{1}} \psi_{\star_{1}} \psi_{\bullet_{2}} + \psi_{\bullet_{1}} \psi_{\star_{1}} \psi_{\star_{2}}"
        r" + \psi_{\star_{1}}^{2} \psi_{\bullet_{2}} - \psi_{\star_{1}}^{2} \psi_{\star_{2}}) [\Delta_{\{1,2\}\{3,4\}}]"
    )
    assert terms_to_plain(two_tails).splitlines()[0] == "+psi_*1^2 psi_*2 [D{1,2}{3,4}]"


def test_plain_single_mark():
    assert terms_to_plain(expand_graph_formula(OmegaMonomial(1, (2,)))) == "+psi_1^2"
