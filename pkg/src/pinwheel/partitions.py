"""Unordered set partitions of the mark set {1, ..., n}."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "SetPartition",
    "canonicalize",
    "codimension",
    "enumerate_set_partitions",
    "part_weights",
]


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``{1, ..., n}`` in canonical form.

    Labels inside a part are ascending and parts are ordered by their
    smallest label, so two partitions are equal iff their canonical
    forms are equal.
    """

    parts: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"partition of [n] needs n >= 1, got n={self.n}")
        seen: set[int] = set()
        for part in self.parts:
            if not part:
                raise ValueError("partition has an empty part")
            for label in part:
                if label in seen:
                    raise ValueError(f"label {label} appears in two parts")
                seen.add(label)
        if seen != set(range(1, self.n + 1)):
            raise ValueError(f"parts do not cover exactly 1..{self.n}")
        parts = tuple(sorted((tuple(sorted(p)) for p in self.parts), key=lambda p: p[0]))
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]], n: int | None = None) -> SetPartition:
        parts = [tuple(p) for p in parts]
        if n is None:
            n = sum(len(p) for p in parts)
        return cls(tuple(parts), n)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def is_trivial(self) -> bool:
        """True for the all-singletons partition."""
        return len(self.parts) == self.n

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, p)) + "}" for p in self.parts)


def canonicalize(p: SetPartition) -> SetPartition:
    return SetPartition(p.parts, p.n)


def _restricted_growth_strings(n: int) -> Iterator[list[int]]:
    # a[0] = 0 and a[i] <= 1 + max(a[:i]); lexicographic order
    a = [0] * n
    maxes = [0] * n
    while True:
        yield a
        i = n - 1
        while i > 0 and a[i] == maxes[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        maxes[i] = max(maxes[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            maxes[j] = maxes[i]


def enumerate_set_partitions(n: int) -> list[SetPartition]:
    """Return every partition of ``{1, ..., n}`` once, in canonical form.

    Partitions with more parts come first, so the all-singletons
    partition leads and ``{1..n}`` is last; ties keep the lexicographic
    order of their restricted-growth strings.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    out = []
    for rgs in _restricted_growth_strings(n):
        blocks: list[list[int]] = [[] for _ in range(max(rgs) + 1)]
        for label, block in enumerate(rgs, start=1):
            blocks[block].append(label)
        # blocks are already sorted by minimum label
        out.append(SetPartition(tuple(map(tuple, blocks)), n))
    out.sort(key=len, reverse=True)
    return out


def part_weights(p: SetPartition, weights: Sequence[int]) -> tuple[int, ...]:
    """Sum ``weights`` (indexed by 1-based mark) over each part of ``p``."""
    if len(weights) != p.n:
        raise ValueError(f"expected {p.n} weights, got {len(weights)}")
    return tuple(sum(weights[i - 1] for i in part) for part in p.parts)


def codimension(p: SetPartition) -> int:
    """Number of parts with more than one label (rational tails of the stratum)."""
    return sum(1 for part in p.parts if len(part) > 1)
