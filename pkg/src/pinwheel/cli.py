"""Command-line interface: ``pinwheel {psi,omega,kappa,expand,table,selftest,cache}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from pinwheel import checks
from pinwheel.expansion import (
    OmegaMonomial,
    expand_graph_formula,
    terms_to_json,
    terms_to_latex,
    terms_to_plain,
)
from pinwheel.numeric import KappaMonomial, kappa_top, omega_top
from pinwheel.psi import IntegrityError, PsiCache, psi_top, set_default_cache

CACHE_ENV = "PINWHEEL_CACHE_DIR"
FORMATS = ("plain", "json", "latex")

EXIT_OK, EXIT_USAGE, EXIT_INTEGRITY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"entries must be non-negative, got {text!r}")
    return values


def render_rational(value: Fraction, fmt: str) -> str:
    num, den = value.numerator, value.denominator
    if fmt == "json":
        return json.dumps({"num": str(num), "den": str(den)}, separators=(",", ":"))
    if fmt == "latex":
        if den == 1:
            return str(num)
        sign = "-" if num < 0 else ""
        return f"{sign}\\frac{{{abs(num)}}}{{{den}}}"
    return str(num) if den == 1 else f"{num}/{den}"


def render_terms(terms, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(terms_to_json(terms), separators=(",", ":"))
    if fmt == "latex":
        return terms_to_latex(terms)
    return terms_to_plain(terms)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cache-dir",
        default=argparse.SUPPRESS,
        help=f"directory of the persistent psi cache (default: ${CACHE_ENV}, else no persistence)",
    )
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default="plain")

    parser = _Parser(prog="pinwheel", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("psi", parents=[common, fmt], help="integral of psi_1^k1 ... psi_n^kn")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--exponents", type=parse_int_list, required=True)

    p = sub.add_parser("omega", parents=[common, fmt], help="integral of omega_1^k1 ... omega_n^kn")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--exponents", type=parse_int_list, required=True)

    p = sub.add_parser("kappa", parents=[common, fmt], help="integral of kappa_l1 ... kappa_ln over M_g")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--indices", type=parse_int_list, required=True)

    p = sub.add_parser("expand", parents=[common, fmt], help="pinwheel expansion of an omega monomial")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--exponents", type=parse_int_list, required=True)
    p.add_argument("--simplify", action="store_true", help="drop tail terms that vanish for dimension reasons")

    p = sub.add_parser("table", parents=[common, fmt], help="all top intersections for given genus and n")
    p.add_argument("kind", choices=("psi", "omega", "kappa"))
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("-n", "--marks", type=int, required=True, help="number of marks (kappa: number of factors)")

    sub.add_parser("selftest", parents=[common], help="run the consistency checks")

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the persistent cache")
    p.add_argument("action", choices=("inspect", "clear"))
    return parser


def _cache_dir(args: argparse.Namespace) -> str | None:
    return getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV) or None


def _table_rows(kind: str, genus: int, n: int):
    if n < 1:
        raise UsageError("need at least one mark")
    total = 3 * genus - 3 if kind == "kappa" else 3 * genus - 3 + n
    if total < 0:
        return
    evaluate = {
        "psi": lambda k: psi_top(genus, k),
        "omega": lambda k: omega_top(OmegaMonomial(genus, k)),
        "kappa": lambda k: kappa_top(KappaMonomial(genus, k)),
    }[kind]
    # one row per multiset: non-increasing vectors only
    for k in checks.compositions(total, n):
        if all(a >= b for a, b in zip(k, k[1:])):
            yield k, evaluate(k)


def run(args: argparse.Namespace, out) -> int:
    cache_dir = _cache_dir(args)
    cache = PsiCache.in_directory(cache_dir) if cache_dir else PsiCache()
    previous = set_default_cache(cache)
    try:
        code = _dispatch(args, cache, out)
        if cache.path is not None and args.command != "cache":
            cache.save()
        return code
    finally:
        set_default_cache(previous)


def _dispatch(args: argparse.Namespace, cache: PsiCache, out) -> int:
    cmd = args.command
    if cmd == "psi":
        print(render_rational(psi_top(args.genus, args.exponents), args.format), file=out)
    elif cmd == "omega":
        print(render_rational(omega_top(OmegaMonomial(args.genus, args.exponents)), args.format), file=out)
    elif cmd == "kappa":
        print(render_rational(kappa_top(KappaMonomial(args.genus, args.indices)), args.format), file=out)
    elif cmd == "expand":
        terms = expand_graph_formula(OmegaMonomial(args.genus, args.exponents), simplify=args.simplify)
        print(render_terms(terms, args.format), file=out)
    elif cmd == "table":
        rows = list(_table_rows(args.kind, args.genus, args.marks))
        if args.format == "json":
            data = [{"k": list(k), "num": str(v.numerator), "den": str(v.denominator)} for k, v in rows]
            print(json.dumps(data, separators=(",", ":")), file=out)
        else:
            for k, v in rows:
                print(",".join(map(str, k)), render_rational(v, args.format), sep="\t", file=out)
    elif cmd == "selftest":
        results = checks.run_all()
        for r in results:
            print(r.line(), file=out)
        failed = sum(not r.passed for r in results)
        print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
        return EXIT_OK if not failed else EXIT_INTEGRITY
    elif cmd == "cache":
        if cache.path is None:
            raise UsageError(f"no cache directory (use --cache-dir or ${CACHE_ENV})")
        if args.action == "inspect":
            print(f"{cache.path}: {len(cache)} records", file=out)
            for key, value in cache.items():
                print(PsiCache.encode(key, value), file=out)
        else:
            cache.clear()
            if cache.path.exists():
                cache.path.unlink()
            print(f"cleared {cache.path}", file=out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args, sys.stdout)
    except IntegrityError as exc:
        print(f"pinwheel: integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (UsageError, ValueError) as exc:
        print(f"pinwheel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
