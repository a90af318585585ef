"""Command line front end: ``klyachko show ...`` and ``klyachko verify ...``.

Exit status is 0 when every check passes, 1 on a verification failure and 2
on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import groupalg, lie, ppart, theta
from .groupalg import gmaj, klyachko_element, partner_element
from .perm import Permutation
from .report import VerificationReport, default_seed

SYMBOLIC_LIMIT = 4
DEFAULT_POINTS = 20
DEFAULT_SAMPLES = 200

RANDOMIZABLE = {"lie", "dynkin", "idempotent", "ideal"}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klyachko", description="Exact checks for the multi-parameter Klyachko element.")
    sub = parser.add_subparsers(dest="command", required=True)

    show = sub.add_parser("show", help="print an element of the twisted group algebra")
    show.add_argument("what", choices=["element", "partner", "gmaj"])
    show.add_argument("--n", type=int, help="size of the symmetric group")
    show.add_argument("--perm", help="permutation in one-line notation (for gmaj)")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument(
        "suite",
        choices=["lie", "dynkin", "idempotent", "ideal", "lemma", "pare", "ppartition", "shuffle-identity", "theta", "cyclotomic"],
    )
    verify.add_argument("--n", type=int, help="size of the symmetric group")
    mode = verify.add_mutually_exclusive_group()
    mode.add_argument("--randomized", action="store_true", help="compare at random points with q1...qn = 1")
    mode.add_argument("--symbolic", action="store_true", help="exact symbolic comparison (exhaustive lemma)")
    verify.add_argument("--points", type=int, default=DEFAULT_POINTS, help="random points (default %(default)s)")
    verify.add_argument("--seed", type=int, default=None, help="random seed (default $KLYACHKO_SEED or 0)")
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random triples for the lemma when sampling")
    verify.add_argument("--degree", type=int, default=6, help="truncation degree for series suites")
    verify.add_argument("--max-size", type=int, default=4, help="largest permutation size for the theta suite")
    verify.add_argument("--json", metavar="PATH", help="also write a JSON report")
    verify.add_argument("--timing", action="store_true", help="include elapsed_ms in the JSON report")
    return parser


def _require_n(args, minimum: int = 2) -> int:
    if args.n is None:
        target = args.suite if args.command == "verify" else args.what
        raise UsageError(f"--n is required for {args.command} {target}")
    if args.n < minimum:
        raise UsageError(f"--n must be at least {minimum}")
    return args.n


def show(args) -> str:
    if args.what == "gmaj":
        if not args.perm:
            raise UsageError("show gmaj needs --perm")
        try:
            sigma = Permutation.parse(args.perm)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.n is not None and args.n != len(sigma):
            raise UsageError(f"--perm {args.perm} is not in S_{args.n}")
        return str(gmaj(sigma))
    n = _require_n(args, 1)
    return (klyachko_element(n) if args.what == "element" else partner_element(n)).render()


def run_suite(args) -> VerificationReport:
    suite = args.suite
    if args.randomized and suite not in RANDOMIZABLE | {"lemma"}:
        raise UsageError(f"suite {suite} has no randomized mode")
    if suite == "theta":
        if args.max_size < 0 or args.degree < 0:
            raise UsageError("--max-size and --degree must be non-negative")
        return theta.theta_suite(args.max_size, args.degree)
    n = _require_n(args)
    seed = default_seed() if args.seed is None else args.seed
    if args.points < 1 or args.samples < 1:
        raise UsageError("--points and --samples must be positive")
    randomized = args.randomized or (not args.symbolic and n > SYMBOLIC_LIMIT)
    method = "randomized" if randomized else "symbolic"

    if suite == "lie":
        return lie.lie_suite(n, method, args.points, seed)
    if suite == "dynkin":
        return lie.dynkin_suite(n, method, args.points, seed)
    if suite == "idempotent":
        return groupalg.check_idempotency(n, method, args.points, seed)
    if suite == "ideal":
        return groupalg.check_ideal(n, method, args.points, seed)
    if suite == "lemma":
        return groupalg.lemma_suite(n, args.samples if randomized else None, seed)
    if suite == "pare":
        return groupalg.pare_suite(n)
    if suite == "ppartition":
        if args.degree < 0:
            raise UsageError("--degree must be non-negative")
        return ppart.ppartition_suite(n, args.degree)
    if suite == "shuffle-identity":
        return ppart.shuffle_identity_suite(n)
    return groupalg.check_specialization(n)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "show":
            print(show(args))
            return 0
        report = run_suite(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"klyachko: error: {exc}", file=sys.stderr)
        return 2
    print(report.render())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(timing=args.timing))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
