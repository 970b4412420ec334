from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pinwheel.checks import compositions
from pinwheel.numeric import KappaMonomial, check_pushforward_identity, kappa_top, omega_top
from pinwheel.psi import psi_top

# published psi values in genus 2
T4 = Fraction(1, 1152)
T3T2 = Fraction(29, 5760)
T2T2T2 = Fraction(7, 240)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_single_mark_is_psi(g):
    assert omega_top((g, (3 * g - 2,))) == psi_top(g, (3 * g - 2,))


def test_omega_genus1_two_marks():
    assert psi_top(1, (1, 1)) == psi_top(1, (1,)) == Fraction(1, 24)
    assert omega_top((1, (1, 1))) == 0


def test_omega_two_two_two():
    assert omega_top((2, (2, 2, 2))) == T2T2T2 - 3 * T3T2 + T4 == Fraction(43, 2880)


def test_kappa_examples():
    assert kappa_top((2, (3,))) == T4
    assert kappa_top((2, (1, 1, 1))) == T2T2T2 - 3 * T3T2 + T4 == Fraction(43, 2880)
    assert kappa_top((2, (1, 2))) == T3T2 - T4 == Fraction(1, 240)


def test_kappa_genus3_single():
    # kappa_6 on M_3 is <tau_7>_3
    assert kappa_top((3, (6,))) == Fraction(1, 82944)


def test_off_degree_is_zero():
    assert omega_top((2, (1, 1))) == 0
    assert kappa_top((2, (1, 1))) == 0


def test_kappa_genus_guard():
    with pytest.raises(ValueError):
        kappa_top((1, (0,)))
    with pytest.raises(ValueError):
        KappaMonomial(2, (1, -1))


def test_omega_unstable_rejected():
    with pytest.raises(ValueError):
        omega_top((0, (0, 0, 0)))


def test_kappa_zero_index_enters_sum_literally():
    # l = (0, 3): partitions {1}{2} and {1,2}; exponents (1, 4) and (4,)
    want = psi_top(2, (1, 4)) - psi_top(2, (4,))
    assert kappa_top((2, (0, 3))) == want == 2 * T4
    assert check_pushforward_identity(2, (0, 3))


def test_omega_with_zero_exponent():
    # k = (4, 2, 0): {1,2}{3} -> (5, 0), {1,3}{2} -> (3, 2), {1}{2,3} -> (4, 1), {1,2,3} -> (4,)
    want = (
        psi_top(2, (4, 2, 0))
        - psi_top(2, (5, 0))
        - psi_top(2, (3, 2))
        - psi_top(2, (4, 1))
        + psi_top(2, (4,))
    )
    assert omega_top((2, (4, 2, 0))) == want


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_omega_with_zero_exponent_vanishes(g, n):
    # with k_i = 0 the monomial is pulled back from the space without mark i,
    # where it has degree above the dimension
    for k in compositions(3 * g - 3 + n, n):
        if 0 in k:
            assert omega_top((g, k)) == 0


def test_negative_exponent_parts_skipped():
    # g=1, k=(0,0,3): the tail {1,2} has alpha - |P| + 1 = -1 and must not reach psi_top
    assert omega_top((1, (0, 0, 3))) == psi_top(1, (0, 0, 3)) - psi_top(1, (0, 2)) - psi_top(1, (0, 2)) + psi_top(1, (1,))


@pytest.mark.parametrize(
    "g, l", [(2, (3,)), (2, (1, 1, 1)), (3, (2, 2, 2))]
)
def test_pushforward_examples(g, l):
    assert check_pushforward_identity(g, l)


@pytest.mark.parametrize("g", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_pushforward_exhaustive(g, n):
    for l in compositions(3 * g - 3, n):
        assert check_pushforward_identity(g, l)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.data())
def test_omega_symmetric(g, data):
    n = data.draw(st.integers(1, 4))
    k = data.draw(st.sampled_from(list(compositions(3 * g - 3 + n, n))))
    perm = data.draw(st.permutations(k))
    assert omega_top((g, k)) == omega_top((g, perm))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.data())
def test_kappa_symmetric(g, data):
    n = data.draw(st.integers(1, 3))
    l = data.draw(st.sampled_from(list(compositions(3 * g - 3, n))))
    perm = data.draw(st.permutations(l))
    assert kappa_top((g, l)) == kappa_top((g, perm))


def test_kappa_1_cubed_genus2_matches_literature():
    # kappa_1^3 on M_2 = 43/2880 (Faber)
    assert kappa_top((2, (1, 1, 1))) == Fraction(43, 2880)


def test_off_degree_skips_recursion(fresh_cache):
    omega_top((3, (5, 5, 5)))
    kappa_top((3, (1, 1)))
    assert len(fresh_cache) == 0


@pytest.mark.parametrize("g", [2, 3, 4])
def test_kappa_zero_acts_as_euler_characteristic(g):
    # the literal partition sum reproduces kappa_0 = 2g - 2
    for n in (1, 2, 3):
        for l in compositions(3 * g - 3, n):
            assert kappa_top((g, (0,) + l)) == (2 * g - 2) * kappa_top((g, l))
