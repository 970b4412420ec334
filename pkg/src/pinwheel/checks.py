"""Consistency checks shared by the ``selftest`` command and the test suite.

Every check returns a :class:`CheckResult`; none of them raise on a
mathematical mismatch.  Integrity errors from the cache do propagate.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from pinwheel.expansion import OmegaMonomial, PinwheelTerm, expand_graph_formula, integrate_expansion
from pinwheel.numeric import check_pushforward_identity, kappa_top, omega_top
from pinwheel.partitions import SetPartition, enumerate_set_partitions, part_weights
from pinwheel.psi import is_stable, psi_top, psi_top_dvv, psi_top_genus0_closed

BELL = (1, 2, 5, 15, 52, 203, 877, 4140)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] {self.name} ({self.seconds:.2f}s){tail}"


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All vectors of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_force_partition_count(n: int) -> int:
    """Count partitions of [n] by deduplicating all label-to-block maps."""
    seen = set()
    for assignment in itertools.product(range(n), repeat=n):
        blocks: dict[int, list[int]] = {}
        for label, block in enumerate(assignment, start=1):
            blocks.setdefault(block, []).append(label)
        seen.add(frozenset(frozenset(b) for b in blocks.values()))
    return len(seen)


def term_violations(m: OmegaMonomial, t: PinwheelTerm) -> list[str]:
    """List every way ``t`` breaks the bookkeeping of the graph formula for ``m``."""
    problems = []
    alphas = part_weights(t.partition, m.exponents)
    sign = 1
    for part, alpha, a, b in zip(t.partition.parts, alphas, t.spine_exponents, t.tail_exponents):
        if len(part) == 1:
            if b != 0 or a != alpha:
                problems.append(f"singleton {part}: got a={a}, b={b}, alpha={alpha}")
        else:
            if alpha == 0:
                problems.append(f"tail {part} has alpha=0")
            if a + b != alpha - 1 or a < 0:
                problems.append(f"tail {part}: a+b={a + b} != alpha-1={alpha - 1}")
            sign *= (-1) ** (b + 1)
    if sign != t.sign:
        problems.append(f"sign {t.sign} != {sign}")
    if t.degree != m.degree:
        problems.append(f"degree {t.degree} != {m.degree}")
    return problems


# Example 2.3 with its two degree-inconsistent exponents corrected
# ({1,3}{2}: psi_bullet^2 psi_2^2, {1}{2,3}: psi_1^3 psi_bullet).
EXAMPLE_MONOMIAL = (3, 2, 0)
EXAMPLE_TERMS = (
    (((1,), (2,), (3,)), +1, (3, 2, 0), (0, 0, 0)),
    (((1, 2), (3,)), -1, (4, 0), (0, 0)),
    (((1, 3), (2,)), -1, (2, 2), (0, 0)),
    (((1,), (2, 3)), -1, (3, 1), (0, 0)),
    (((1, 2, 3),), -1, (4,), (0,)),
    (((1, 2, 3),), +1, (3,), (1,)),
)


def check_example(genus: int = 2) -> tuple[bool, str]:
    m = OmegaMonomial(genus, EXAMPLE_MONOMIAL)
    got = Counter(t.canonical() for t in expand_graph_formula(m, simplify=True))
    want = Counter(EXAMPLE_TERMS)
    strata = {t[0] for t in got}
    ok = got == want and len(strata) == 5 and sum(got.values()) == 6
    return ok, f"{len(strata)} strata, {sum(got.values())} terms"


def check_genus0_normalization() -> tuple[bool, str]:
    bad = [n for n in range(3, 11) if psi_top(0, (n - 3,) + (0,) * (n - 1)) != 1]
    return not bad, f"n=3..10, failures at {bad}" if bad else "n=3..10"


def check_genus0_closed_form() -> tuple[bool, str]:
    count = 0
    for n in range(3, 9):
        for k in compositions(n - 3, n):
            if psi_top(0, k) != psi_top_genus0_closed(k) or psi_top_dvv(0, k) != psi_top_genus0_closed(k):
                return False, f"mismatch at {k}"
            count += 1
    return True, f"{count} vectors"


def _random_instance(rng: random.Random, extra: int) -> tuple[int, tuple[int, ...]]:
    # stable (g, n) with g <= 3, n <= 6 and exponents summing to 3g - 3 + n + extra
    while True:
        g, n = rng.randint(0, 3), rng.randint(1, 6)
        total = 3 * g - 3 + n + extra
        if is_stable(g, n) and total >= 0:
            break
    cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
    k = tuple(b - a for a, b in zip([0] + cuts, cuts + [total]))
    return g, k


def check_string_dilaton(instances: int = 200, seed: int = 20161019) -> tuple[bool, str]:
    """String and dilaton equations on DVV-only values, plus agreement with :func:`psi_top`."""
    rng = random.Random(seed)
    for _ in range(instances):
        g, k = _random_instance(rng, extra=1)
        lhs = psi_top_dvv(g, k + (0,))
        rhs = sum(
            (psi_top_dvv(g, k[:j] + (kj - 1,) + k[j + 1 :]) for j, kj in enumerate(k) if kj > 0),
            Fraction(0),
        )
        if lhs != rhs or lhs != psi_top(g, k + (0,)):
            return False, f"string equation fails at g={g}, k={k}"
        g, k = _random_instance(rng, extra=0)
        lhs = psi_top_dvv(g, k + (1,))
        if lhs != (2 * g - 2 + len(k)) * psi_top_dvv(g, k) or lhs != psi_top(g, k + (1,)):
            return False, f"dilaton equation fails at g={g}, k={k}"
    return True, f"{instances} string + {instances} dilaton instances"


def check_expansion_consistency() -> tuple[bool, str]:
    count = 0
    for g in (1, 2):
        for n in range(1, 5):
            for k in compositions(3 * g - 3 + n, n):
                m = OmegaMonomial(g, k)
                if integrate_expansion(m) != omega_top(m):
                    return False, f"mismatch at g={g}, k={k}"
                count += 1
    return True, f"{count} monomials"


def check_pushforward() -> tuple[bool, str]:
    count = 0
    for g in (2, 3):
        for n in range(1, 4):
            for l in compositions(3 * g - 3, n):
                if not check_pushforward_identity(g, l):
                    return False, f"fails at g={g}, l={l}"
                count += 1
    return True, f"{count} index vectors"


SPOT_VALUES = (
    ("psi_top(1,(1))", lambda: psi_top(1, (1,)), Fraction(1, 24)),
    ("psi_top(2,(4))", lambda: psi_top(2, (4,)), Fraction(1, 1152)),
    ("kappa_top(2,(1,1,1))", lambda: kappa_top((2, (1, 1, 1))), Fraction(43, 2880)),
    ("kappa_top(2,(1,2))", lambda: kappa_top((2, (1, 2))), Fraction(1, 240)),
    ("omega_top(1,(1,1))", lambda: omega_top((1, (1, 1))), Fraction(0)),
)


def check_spot_values() -> tuple[bool, str]:
    bad = [name for name, f, want in SPOT_VALUES if f() != want]
    return not bad, f"wrong: {bad}" if bad else f"{len(SPOT_VALUES)} values"


def check_properties(samples: int = 100, seed: int = 1019) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(samples):
        g = rng.randint(0, 2)
        n = rng.randint(1, 5)
        if not is_stable(g, n):
            n = 3
        k = rng.choice(list(compositions(3 * g - 3 + n, n)))
        perm = list(k)
        rng.shuffle(perm)
        if psi_top(g, k) != psi_top(g, perm):
            return False, f"psi_top not symmetric at g={g}, {k} vs {perm}"
        if g >= 1 and omega_top((g, k)) != omega_top((g, perm)):
            return False, f"omega_top not symmetric at g={g}, {k}"
        gk = g + 2
        l = tuple(rng.choice(list(compositions(3 * gk - 3, n))))
        lp = list(l)
        rng.shuffle(lp)
        if kappa_top((gk, l)) != kappa_top((gk, lp)):
            return False, f"kappa_top not symmetric at g={gk}, {l}"
        # dimension vanishing
        off = tuple(x + 1 if i == 0 else x for i, x in enumerate(k))
        if psi_top(g, off) != 0 or (g >= 1 and omega_top((g, off)) != 0):
            return False, f"no dimension vanishing at g={g}, {off}"
    for n, bell in enumerate(BELL, start=1):
        parts = enumerate_set_partitions(n)
        if len(parts) != bell or len(set(parts)) != bell:
            return False, f"wrong partition count for n={n}"
        if n <= 6 and brute_force_partition_count(n) != bell:
            return False, f"brute force disagrees for n={n}"
        for p in parts:
            if SetPartition(p.parts, p.n) != p:
                return False, f"canonical form not idempotent for {p}"
    terms = 0
    for g in (1, 2):
        for n in range(1, 5):
            for degree in range(0, 3 * g - 3 + n + 2):
                for k in compositions(degree, n):
                    m = OmegaMonomial(g, k)
                    for t in expand_graph_formula(m):
                        if term_violations(m, t):
                            return False, f"bad term {t.canonical()} for {k}: {term_violations(m, t)}"
                        terms += 1
    return True, f"{samples} permutations, Bell B1..B8, {terms} terms"


CHECKS: tuple[tuple[str, Callable[[], tuple[bool, str]], float], ...] = (
    ("example-2.3 regression", check_example, 1.0),
    ("genus-0 normalization", check_genus0_normalization, 1.0),
    ("genus-0 closed form", check_genus0_closed_form, 30.0),
    ("string/dilaton equations", check_string_dilaton, 30.0),
    ("expansion vs omega_top", check_expansion_consistency, 60.0),
    ("pushforward identity", check_pushforward, 60.0),
    ("known values", check_spot_values, 5.0),
    ("property suite", check_properties, 30.0),
)


def run_check(name: str, fn: Callable[[], tuple[bool, str]], budget: float) -> CheckResult:
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        ok = False
        detail = f"{detail}; took {elapsed:.1f}s > {budget:.0f}s"
    return CheckResult(name, ok, detail, elapsed)


def run_all() -> list[CheckResult]:
    return [run_check(name, fn, budget) for name, fn, budget in CHECKS]
