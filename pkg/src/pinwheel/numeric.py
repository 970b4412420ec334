"""Closed partition sums for top intersections of omega and kappa classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from pinwheel.expansion import OmegaMonomial
from pinwheel.partitions import enumerate_set_partitions, part_weights
from pinwheel.psi import PsiCache, psi_top

__all__ = ["KappaMonomial", "check_pushforward_identity", "kappa_top", "omega_top"]


@dataclass(frozen=True)
class KappaMonomial:
    """``prod_i kappa_{l_i}`` on the unmarked genus ``genus`` space (``genus >= 2``)."""

    genus: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(int(l) for l in self.indices))
        if self.genus < 2:
            raise ValueError(f"kappa classes on the unmarked space need genus >= 2, got {self.genus}")
        if not self.indices:
            raise ValueError("kappa monomial needs at least one factor")
        if any(l < 0 for l in self.indices):
            raise ValueError(f"negative kappa index in {self.indices}")

    @property
    def degree(self) -> int:
        return sum(self.indices)

    def is_top_degree(self) -> bool:
        return self.degree == 3 * self.genus - 3


def _partition_sum(g: int, weights: Sequence[int], shift, cache: PsiCache | None) -> Fraction:
    # sum over P of (-1)^(n + len(P)) <prod tau_{shift(weight_j, |P_j|)}>_g
    n = len(weights)
    total = Fraction(0)
    for partition in enumerate_set_partitions(n):
        spine = [shift(w, len(part)) for w, part in zip(part_weights(partition, weights), partition.parts)]
        if any(e < 0 for e in spine):
            continue
        sign = -1 if (n + len(partition)) % 2 else 1
        total += sign * psi_top(g, spine, cache)
    return total


def omega_top(m: OmegaMonomial | tuple[int, Sequence[int]], cache: PsiCache | None = None) -> Fraction:
    """Integral of ``prod omega_i^{k_i}``; 0 unless the degree is ``3g - 3 + n``.

    Each part ``P_j`` of a partition of the marks becomes one spine mark
    with psi exponent ``alpha_j - |P_j| + 1``, where ``alpha_j`` sums the
    ``k_i`` over the part.  Partitions producing a negative exponent are
    skipped.

    >>> omega_top((2, (2, 2, 2)))
    Fraction(43, 2880)
    """
    if not isinstance(m, OmegaMonomial):
        m = OmegaMonomial(m[0], tuple(m[1]))
    if not m.is_top_degree():
        return Fraction(0)
    return _partition_sum(m.genus, m.exponents, lambda alpha, size: alpha - size + 1, cache)


def kappa_top(m: KappaMonomial | tuple[int, Sequence[int]], cache: PsiCache | None = None) -> Fraction:
    """Integral of ``prod kappa_{l_i}`` over the unmarked space; 0 unless ``sum(l) == 3g - 3``.

    Index 0 is accepted and enters the partition sum literally.
    """
    if not isinstance(m, KappaMonomial):
        m = KappaMonomial(m[0], tuple(m[1]))
    if not m.is_top_degree():
        return Fraction(0)
    return _partition_sum(m.genus, m.indices, lambda beta, size: beta + 1, cache)


def check_pushforward_identity(genus: int, indices: Sequence[int], cache: PsiCache | None = None) -> bool:
    """Compare ``omega_top(g, l + 1)`` with ``kappa_top(g, l)``.

    Forgetting all marks pushes ``prod omega_i^{l_i + 1}`` forward to
    ``prod kappa_{l_i}``, so the two numbers must agree.
    """
    indices = tuple(indices)
    lhs = omega_top(OmegaMonomial(genus, tuple(l + 1 for l in indices)), cache)
    rhs = kappa_top(KappaMonomial(genus, indices), cache)
    return lhs == rhs
