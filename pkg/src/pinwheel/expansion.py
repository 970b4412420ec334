"""Expansion of omega monomials into psi-decorated pinwheel strata.

A pinwheel stratum is indexed by a set partition of the marks: the genus-g
spine carries the singleton marks plus one node per non-singleton part, and
each non-singleton part sits on its own genus-0 rational tail.  The node
joining the spine to tail ``j`` has a spine-side flag and a tail-side flag;
their psi classes are written ``psi_bullet_j`` and ``psi_star_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from pinwheel.partitions import SetPartition, codimension, enumerate_set_partitions, part_weights
from pinwheel.psi import PsiCache, psi_top

__all__ = [
    "OmegaMonomial",
    "PinwheelTerm",
    "evaluate_pinwheel_term",
    "expand_graph_formula",
    "integrate_expansion",
    "simplify_terms",
    "term_to_latex",
    "terms_from_json",
    "terms_to_json",
    "terms_to_latex",
    "terms_to_plain",
]


@dataclass(frozen=True)
class OmegaMonomial:
    """``prod_i omega_i^{k_i}`` on the genus ``genus`` space with ``len(exponents)`` marks."""

    genus: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.exponents))
        if self.genus < 1:
            raise ValueError(f"omega classes need genus >= 1, got {self.genus}")
        if not self.exponents:
            raise ValueError("omega monomial needs at least one mark")
        if any(k < 0 for k in self.exponents):
            raise ValueError(f"negative omega exponent in {self.exponents}")

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def dimension(self) -> int:
        return 3 * self.genus - 3 + self.n

    def is_top_degree(self) -> bool:
        return self.degree == self.dimension


@dataclass(frozen=True)
class PinwheelTerm:
    """One signed, psi-decorated pinwheel stratum.

    ``spine_exponents[j]`` is the power of the spine-side psi class for
    part ``j`` (for a singleton part this is the psi class of the mark
    itself); ``tail_exponents[j]`` is the power of the tail-side psi class
    and is 0 for singletons.
    """

    partition: SetPartition
    sign: int
    spine_exponents: tuple[int, ...]
    tail_exponents: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        r = len(self.partition)
        if not self.tail_exponents:
            object.__setattr__(self, "tail_exponents", (0,) * r)
        object.__setattr__(self, "spine_exponents", tuple(self.spine_exponents))
        object.__setattr__(self, "tail_exponents", tuple(self.tail_exponents))
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if len(self.spine_exponents) != r or len(self.tail_exponents) != r:
            raise ValueError("exponent vectors must have one entry per part")
        if any(a < 0 for a in self.spine_exponents) or any(b < 0 for b in self.tail_exponents):
            raise ValueError("negative psi exponent in pinwheel term")
        for part, b in zip(self.partition.parts, self.tail_exponents):
            if len(part) == 1 and b != 0:
                raise ValueError(f"singleton part {part} cannot carry a tail exponent")

    @property
    def codimension(self) -> int:
        return codimension(self.partition)

    @property
    def degree(self) -> int:
        return self.codimension + sum(self.spine_exponents) + sum(self.tail_exponents)

    def canonical(self) -> tuple:
        """Hashable form used to compare term multisets."""
        return (self.partition.parts, self.sign, self.spine_exponents, self.tail_exponents)

    def to_dict(self) -> dict[str, Any]:
        return {
            "partition": [list(p) for p in self.partition.parts],
            "sign": self.sign,
            "spine_exponents": list(self.spine_exponents),
            "tail_exponents": list(self.tail_exponents),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PinwheelTerm:
        partition = SetPartition.from_parts(data["partition"])
        return cls(partition, int(data["sign"]), tuple(data["spine_exponents"]), tuple(data["tail_exponents"]))


def _as_monomial(m: OmegaMonomial | tuple[int, Sequence[int]]) -> OmegaMonomial:
    if isinstance(m, OmegaMonomial):
        return m
    g, k = m
    return OmegaMonomial(g, tuple(k))


def expand_graph_formula(m: OmegaMonomial, simplify: bool = False) -> list[PinwheelTerm]:
    """Expand ``prod omega_i^{k_i}`` as a signed sum of decorated pinwheel strata.

    A non-singleton part with weight ``alpha`` contributes the truncated
    geometric series ``sum_{b=0}^{alpha-1} (-1)^{b+1} psi_bullet^{alpha-1-b} psi_star^b``,
    which is empty (so the whole stratum drops out) when ``alpha == 0``.
    Singleton parts contribute ``psi_bullet^alpha``.

    With ``simplify=True`` terms whose tail exponent exceeds ``|P_j| - 2``
    are dropped; they are zero in every top-degree evaluation.
    """
    m = _as_monomial(m)
    terms: list[PinwheelTerm] = []
    for partition in enumerate_set_partitions(m.n):
        alphas = part_weights(partition, m.exponents)
        # per part: list of (sign, a, b) choices
        choices: list[list[tuple[int, int, int]]] = []
        for part, alpha in zip(partition.parts, alphas):
            if len(part) == 1:
                choices.append([(1, alpha, 0)])
                continue
            top_b = alpha - 1
            if simplify:
                top_b = min(top_b, len(part) - 2)
            choices.append([(-1 if b % 2 == 0 else 1, alpha - 1 - b, b) for b in range(top_b + 1)])
        if any(not c for c in choices):
            continue
        for combo in _product_ascending(choices):
            sign = 1
            for s, _, _ in combo:
                sign *= s
            terms.append(
                PinwheelTerm(
                    partition,
                    sign,
                    tuple(a for _, a, _ in combo),
                    tuple(b for _, _, b in combo),
                )
            )
    return terms


def _product_ascending(choices):
    # cartesian product, last part varying fastest, each part by ascending b
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for tail in _product_ascending(choices[1:]):
            yield (head,) + tail


def simplify_terms(terms: Sequence[PinwheelTerm]) -> list[PinwheelTerm]:
    return [
        t
        for t in terms
        if all(b <= len(p) - 2 or len(p) == 1 for p, b in zip(t.partition.parts, t.tail_exponents))
    ]


def evaluate_pinwheel_term(g: int, n: int, t: PinwheelTerm, cache: PsiCache | None = None) -> Fraction:
    """Integrate one decorated stratum over the genus ``g``, ``n``-marked space.

    Each rational tail with ``|P|`` marks is a genus-0 space with ``|P| + 1``
    marks, and only ``psi_star^{|P|-2}`` integrates to something nonzero
    there (to 1).  What remains is a psi integral on the spine, which has
    one mark per part.
    """
    if t.partition.n != n:
        raise ValueError(f"term lives on {t.partition.n} marks, not {n}")
    if g < 1:
        raise ValueError(f"pinwheel strata need genus >= 1, got {g}")
    if t.degree != 3 * g - 3 + n:
        return Fraction(0)
    for part, b in zip(t.partition.parts, t.tail_exponents):
        if len(part) > 1 and b != len(part) - 2:
            return Fraction(0)
    return t.sign * psi_top(g, t.spine_exponents, cache)


def integrate_expansion(m: OmegaMonomial, cache: PsiCache | None = None) -> Fraction:
    """Top-degree integral of an omega monomial via its graph expansion."""
    m = _as_monomial(m)
    if not m.is_top_degree():
        return Fraction(0)
    return sum(
        (evaluate_pinwheel_term(m.genus, m.n, t, cache) for t in expand_graph_formula(m)),
        Fraction(0),
    )


# -- rendering ---------------------------------------------------------------


def terms_to_json(terms: Sequence[PinwheelTerm]) -> list[dict[str, Any]]:
    return [t.to_dict() for t in terms]


def terms_from_json(data: Sequence[dict[str, Any]]) -> list[PinwheelTerm]:
    return [PinwheelTerm.from_dict(d) for d in data]


def _power(base: str, e: int, latex: bool) -> str:
    if e == 0:
        return ""
    if e == 1:
        return base
    return f"{base}^{{{e}}}" if latex else f"{base}^{e}"


def _factors(t: PinwheelTerm, latex: bool) -> list[str]:
    trivial = t.partition.is_trivial()
    bullet = r"\psi_\bullet" if latex else "psi_*"
    star = r"\psi_\star" if latex else "psi_o"
    out = []
    for j, (part, a, b) in enumerate(zip(t.partition.parts, t.spine_exponents, t.tail_exponents), start=1):
        if len(part) == 1:
            mark = f"\\psi_{{{part[0]}}}" if latex else f"psi_{part[0]}"
            out.append(_power(mark, a, latex))
            continue
        # flags get the part index only when there is more than one tail
        if t.codimension == 1:
            names = (bullet, star)
        elif latex:
            names = (f"\\psi_{{\\bullet_{{{j}}}}}", f"\\psi_{{\\star_{{{j}}}}}")
        else:
            names = (f"{bullet}{j}", f"{star}{j}")
        out.append(_power(names[0], a, latex))
        out.append(_power(names[1], b, latex))
    out = [f for f in out if f]
    if not trivial:
        if latex:
            stratum = "".join("\\{" + ",".join(map(str, p)) + "\\}" for p in t.partition.parts)
            out.append(f"[\\Delta_{{{stratum}}}]")
        else:
            out.append(f"[D{t.partition}]")
    return out


def term_to_latex(t: PinwheelTerm) -> str:
    body = " ".join(_factors(t, latex=True)) or "1"
    return ("+ " if t.sign > 0 else "- ") + body


def _decorations_latex(t: PinwheelTerm) -> str:
    return " ".join(f for f in _factors(t, latex=True) if not f.startswith("[")) or "1"


def terms_to_latex(terms: Sequence[PinwheelTerm]) -> str:
    """Render terms as LaTeX, collecting the terms of each stratum in brackets.

    A stratum with several terms is written ``- (x - y) [\\Delta_P]`` with
    the leading sign pulled out, as is customary.
    """
    if not terms:
        return "0"
    groups: dict[tuple, list[PinwheelTerm]] = {}
    for t in terms:
        groups.setdefault(t.partition.parts, []).append(t)
    chunks = []
    for group in groups.values():
        if len(group) == 1:
            chunks.append(term_to_latex(group[0]))
            continue
        lead = group[0].sign
        inner = _decorations_latex(group[0])
        for t in group[1:]:
            inner += (" + " if t.sign == lead else " - ") + _decorations_latex(t)
        stratum = [f for f in _factors(group[0], latex=True) if f.startswith("[")]
        chunks.append(("+ " if lead > 0 else "- ") + f"({inner}) " + " ".join(stratum))
    text = " ".join(chunks)
    return text[2:] if text.startswith("+ ") else text


def terms_to_plain(terms: Sequence[PinwheelTerm]) -> str:
    """One term per line, e.g. ``-psi_*^3 psi_o [D{1,2,3}]``.

    ``psi_*`` is the spine-side flag of a node, ``psi_o`` the tail side.
    """
    lines = []
    for t in terms:
        body = " ".join(_factors(t, latex=False)) or "1"
        lines.append(("+" if t.sign > 0 else "-") + body)
    return "\n".join(lines) if lines else "0"
