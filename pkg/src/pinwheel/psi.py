"""Top intersections of psi classes on the moduli space of stable curves.

``psi_top(g, k)`` is the integral of ``psi_1^k_1 ... psi_n^k_n`` over the
moduli space of genus ``g`` curves with ``n`` marks.  Values are computed by
the DVV (Virasoro) recursion on the largest exponent, using the string and
dilaton equations to strip marks with exponent 0 or 1.  The only seed is
``<tau_0^3>_0 = 1``.
"""

from __future__ import annotations

import json
import os
import threading
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "IntegrityError",
    "PsiCache",
    "default_cache",
    "set_default_cache",
    "double_factorial",
    "intersection_key",
    "is_stable",
    "psi_top",
    "psi_top_dvv",
    "psi_top_genus0_closed",
]

Key = tuple[int, tuple[int, ...]]


class IntegrityError(RuntimeError):
    """Two different values were recorded for the same intersection number."""


def is_stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def double_factorial(m: int) -> int:
    """``m!!`` with the convention ``(-1)!! = 1``."""
    if m < -1:
        raise ValueError(f"double factorial undefined for {m}")
    return prod(range(m, 0, -2)) if m > 0 else 1


def _check_args(g: int, exponents: Sequence[int]) -> None:
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    if any(k < 0 for k in exponents):
        raise ValueError(f"negative psi exponent in {tuple(exponents)}")
    if not exponents:
        raise ValueError("at least one marked point is required")
    if not is_stable(g, len(exponents)):
        raise ValueError(f"(g, n) = ({g}, {len(exponents)}) is not stable")


def intersection_key(g: int, exponents: Iterable[int]) -> Key:
    """Canonical memo key: genus plus the sorted exponent multiset."""
    return g, tuple(sorted(exponents))


class PsiCache:
    """Thread-safe memo table for psi intersections.

    Re-inserting a known value is a no-op; inserting a different value for
    an existing key raises :class:`IntegrityError`.  Optionally backed by a
    newline-delimited JSON file, one record per key.
    """

    FILENAME = "psi_cache.jsonl"

    def __init__(self, path: str | os.PathLike | None = None) -> None:
        self._table: dict[Key, Fraction] = {}
        self._lock = threading.RLock()
        self._dirty: list[Key] = []
        self.path = Path(path) if path is not None else None
        if self.path is not None:
            self.load(self.path)

    @classmethod
    def in_directory(cls, directory: str | os.PathLike) -> PsiCache:
        return cls(Path(directory) / cls.FILENAME)

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, key: Key) -> bool:
        return key in self._table

    def items(self) -> list[tuple[Key, Fraction]]:
        with self._lock:
            return sorted(self._table.items())

    def get(self, key: Key) -> Fraction | None:
        return self._table.get(key)

    def put(self, key: Key, value: Fraction) -> None:
        value = Fraction(value)
        with self._lock:
            old = self._table.get(key)
            if old is None:
                self._table[key] = value
                self._dirty.append(key)
            elif old != value:
                raise IntegrityError(f"conflicting values for {key}: {old} vs {value}")

    def clear(self) -> None:
        with self._lock:
            self._table.clear()
            self._dirty.clear()

    @staticmethod
    def encode(key: Key, value: Fraction) -> str:
        g, k = key
        return json.dumps(
            {"g": g, "k": list(k), "num": str(value.numerator), "den": str(value.denominator)},
            separators=(",", ":"),
        )

    @staticmethod
    def decode(line: str) -> tuple[Key, Fraction]:
        rec = json.loads(line)
        num, den = int(rec["num"]), int(rec["den"])
        if den <= 0:
            raise IntegrityError(f"non-positive denominator in cache record {line!r}")
        value = Fraction(num, den)
        if value.numerator != num or value.denominator != den:
            raise IntegrityError(f"cache record not in lowest terms: {line!r}")
        return intersection_key(int(rec["g"]), rec["k"]), value

    def load(self, path: str | os.PathLike) -> int:
        """Merge records from ``path``; a missing file loads nothing."""
        path = Path(path)
        if not path.exists():
            return 0
        count = 0
        with self._lock:
            with path.open() as fh:
                for lineno, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        key, value = self.decode(line)
                    except (ValueError, KeyError, TypeError) as exc:
                        raise IntegrityError(f"{path}:{lineno}: malformed record") from exc
                    self.put(key, value)
                    count += 1
            self._dirty.clear()
        return count

    def save(self, path: str | os.PathLike | None = None) -> Path:
        """Append records added since the last load/save."""
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no cache path configured")
        with self._lock:
            target.parent.mkdir(parents=True, exist_ok=True)
            with target.open("a") as fh:
                for key in self._dirty:
                    fh.write(self.encode(key, self._table[key]) + "\n")
            self._dirty.clear()
        return target


_default_cache = PsiCache()


def default_cache() -> PsiCache:
    return _default_cache


def set_default_cache(cache: PsiCache) -> PsiCache:
    """Install ``cache`` as the table used when no cache is passed; returns the old one."""
    global _default_cache
    old, _default_cache = _default_cache, cache
    return old


def psi_top_genus0_closed(exponents: Sequence[int]) -> Fraction:
    """Genus-zero multinomial formula ``(n-3)! / prod(k_i!)``.

    Only defined when ``sum(k) == n - 3``; anything else raises.
    """
    n = len(exponents)
    if n < 3:
        raise ValueError(f"genus-0 closed form needs n >= 3, got n={n}")
    if any(k < 0 for k in exponents):
        raise ValueError(f"negative psi exponent in {tuple(exponents)}")
    if sum(exponents) != n - 3:
        raise ValueError(f"exponents {tuple(exponents)} do not sum to n - 3 = {n - 3}")
    return Fraction(factorial(n - 3), prod(factorial(k) for k in exponents))


def psi_top(g: int, exponents: Sequence[int], cache: PsiCache | None = None) -> Fraction:
    """Return ``<tau_k1 ... tau_kn>_g``.

    Zero whenever ``sum(k) != 3g - 3 + n``.

    >>> psi_top(1, [1])
    Fraction(1, 24)
    >>> psi_top(2, [4])
    Fraction(1, 1152)
    """
    exponents = tuple(exponents)
    _check_args(g, exponents)
    if sum(exponents) != 3 * g - 3 + len(exponents):
        return Fraction(0)
    return _Evaluator(cache if cache is not None else _default_cache).value(g, tuple(sorted(exponents)))


_dvv_only_cache = PsiCache()


def psi_top_dvv(g: int, exponents: Sequence[int]) -> Fraction:
    """Same as :func:`psi_top` but uses DVV alone, without string/dilaton shortcuts.

    Kept on a private cache so it stays an independent evaluation path.
    """
    exponents = tuple(exponents)
    _check_args(g, exponents)
    if sum(exponents) != 3 * g - 3 + len(exponents):
        return Fraction(0)
    return _Evaluator(_dvv_only_cache, shortcuts=False).value(g, tuple(sorted(exponents)))


class _Evaluator:
    def __init__(self, cache: PsiCache, shortcuts: bool = True) -> None:
        self.cache = cache
        self.shortcuts = shortcuts

    def value(self, g: int, k: tuple[int, ...]) -> Fraction:
        """Intersection for sorted ``k``; returns 0 outside the stable range."""
        n = len(k)
        if g < 0 or n == 0 or not is_stable(g, n) or sum(k) != 3 * g - 3 + n:
            return Fraction(0)
        key = (g, k)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        result = self._compute(g, k)
        self.cache.put(key, result)
        return result

    def _compute(self, g: int, k: tuple[int, ...]) -> Fraction:
        n = len(k)
        if (g, n) == (0, 3):
            return Fraction(1)  # only degree-matching case is k = (0, 0, 0)
        if (g, n) == (1, 1):
            return self._tau1_genus1()
        if not self.shortcuts:
            return self._dvv(g, k[-1] - 1, k[:-1])
        # after dropping one mark, (g, n - 1) is stable in every remaining case
        if k[0] == 0:
            rest = k[1:]
            total = Fraction(0)
            for j, kj in enumerate(rest):
                if kj > 0 and (j == 0 or rest[j - 1] != kj):
                    mult = rest.count(kj)
                    lowered = rest[:j] + (kj - 1,) + rest[j + 1 :]
                    total += mult * self.value(g, tuple(sorted(lowered)))
            return total
        if k[0] == 1:
            return (2 * g - 2 + n - 1) * self.value(g, k[1:])
        return self._dvv(g, k[-1] - 1, k[:-1])

    def _dvv(self, g: int, m: int, rest: tuple[int, ...]) -> Fraction:
        """DVV recursion for ``<tau_{m+1} tau_rest>_g``."""
        total = Fraction(0)
        for j, d in enumerate(rest):
            others = rest[:j] + rest[j + 1 :]
            coeff = Fraction(double_factorial(2 * m + 2 * d + 1), double_factorial(2 * d - 1))
            total += coeff * self.value(g, tuple(sorted(others + (m + d,))))
        half = Fraction(0)
        for r in range(m):
            s = m - 1 - r
            coeff = double_factorial(2 * r + 1) * double_factorial(2 * s + 1)
            inner = self.value(g - 1, tuple(sorted(rest + (r, s))))
            idx = range(len(rest))
            for size in range(len(rest) + 1):
                for subset in combinations(idx, size):
                    left = tuple(rest[i] for i in subset)
                    right = tuple(rest[i] for i in idx if i not in subset)
                    for g1 in range(g + 1):
                        a = self.value(g1, tuple(sorted(left + (r,))))
                        if a:
                            inner += a * self.value(g - g1, tuple(sorted(right + (s,))))
            half += coeff * inner
        return (total + half / 2) / double_factorial(2 * m + 3)

    def _tau1_genus1(self) -> Fraction:
        # <tau_1>_1 = <tau_2 tau_0>_1 by the string equation; DVV expresses
        # <tau_2 tau_0>_1 as (3 <tau_1>_1 + (1/2) <tau_0^3>_0) / 5!!, linear in the unknown.
        coeff = Fraction(double_factorial(3), double_factorial(-1)) / double_factorial(5)
        constant = (
            Fraction(double_factorial(1) * double_factorial(1), 2)
            * self.value(0, (0, 0, 0))
            / double_factorial(5)
        )
        return constant / (1 - coeff)
