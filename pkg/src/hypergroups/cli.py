"""Command-line front end.

Exit codes: 0 success, 1 I/O or theorem failure, 2 validation failure,
3 hypothesis not met, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bits import mask_of, members
from .enumeration import PROPERTY_FILTERS, _register_filters, enumerate_hypergroups, read_catalog, write_catalog
from .errors import (
    BudgetExceeded,
    HypothesisViolation,
    NotClosed,
    UndefinedForNonRT,
    ValidationError,
)
from .hgt import format_hgt, read_hgt
from .quotient import quotient
from .report import analyze, to_json, to_text
from .verify import QUESTIONS, THEOREM_IDS, format_summary, search_counterexample, verify_catalog, write_outcome

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_HYPOTHESIS = 3
EXIT_BUDGET = 4


def _env_budget() -> float | None:
    raw = os.environ.get("HG_BUDGET_SECS")
    return float(raw) if raw else None


def _strict(args) -> bool:
    return args.pvalenced_reading == "subset"


def cmd_validate(args) -> int:
    try:
        H = read_hgt(args.path)
    except ValidationError as e:
        print(f"{args.path}: invalid", file=sys.stderr)
        for v in e.violations or []:
            print(f"  {v.kind} witness={v.witness}: {v.message}", file=sys.stderr)
        if not e.violations:
            print(f"  {e}", file=sys.stderr)
        return EXIT_INVALID
    print(f"{args.path}: valid hypergroup of order {H.order}; star {' '.join(map(str, H.star))}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    H = read_hgt(args.path)
    primes = [int(p) for p in args.primes.split(",")] if args.primes else None
    if primes is not None:
        from .arith import is_rt

        if not is_rt(H):
            print("prime-specific queries need a residually thin hypergroup", file=sys.stderr)
            return EXIT_HYPOTHESIS
    rep = analyze(H, source=Path(args.path).name, primes=primes, strict=_strict(args))
    sys.stdout.write(to_json(rep) if args.json else to_text(rep))
    return EXIT_OK


def cmd_quotient(args) -> int:
    H = read_hgt(args.path)
    try:
        F = mask_of(int(x) for x in args.by.split(",") if x.strip())
    except ValueError:
        print("--by expects a comma-separated list of element indices", file=sys.stderr)
        return EXIT_INVALID
    try:
        qm = quotient(H, F)
    except NotClosed as e:
        print(f"NotClosed: {e}", file=sys.stderr)
        return EXIT_INVALID
    comments = [f"quotient by {{{','.join(map(str, members(F)))}}}"]
    for i, c in enumerate(qm.classes):
        comments.append(f"class {i}: {' '.join(map(str, members(c)))}")
    sys.stdout.write(format_hgt(qm.quotient, comments))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    budget = args.budget if args.budget is not None else _env_budget()
    hs = enumerate_hypergroups(args.order, filter=args.filter, budget=budget, workers=args.workers)
    write_catalog(hs, args.out)
    print(f"order {args.order}: {len(hs)} classes written to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    items = read_catalog(args.catalog)
    theorems = None if args.theorem in (None, "all") else args.theorem.split(",")
    summary = verify_catalog(items, theorems=theorems, workers=args.workers, strict=_strict(args))
    if args.json:
        sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(format_summary(summary))
    return EXIT_OK if summary["total_failures"] == 0 else EXIT_FAIL


def cmd_search(args) -> int:
    budget = args.budget if args.budget is not None else _env_budget()
    outcome = search_counterexample(
        args.question, args.max_order, strict=_strict(args), budget=budget, workers=args.workers
    )
    paths = write_outcome(outcome, args.out)
    print(f"{args.question} up to order {args.max_order}: {outcome.status}")
    for p in paths:
        print(f"  wrote {p}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    if not PROPERTY_FILTERS:
        _register_filters()
    ap = argparse.ArgumentParser(prog="hypergroups", description="Finite hypergroup analysis toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def reading(p):
        p.add_argument(
            "--pvalenced-reading",
            choices=("subset", "membership"),
            default="subset",
            help="which reading of the p-valenced condition to use",
        )

    p = sub.add_parser("validate", help="check an HGT file against the axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="report every decided property")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--primes", help="comma-separated primes (default: primes up to the valency)")
    reading(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("quotient", help="emit H//F in HGT format")
    p.add_argument("path")
    p.add_argument("--by", required=True, help="comma-separated elements of F")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("enumerate", help="write one HGT file per isomorphism class")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=float, help="seconds; required for order 5")
    p.add_argument("--filter", choices=sorted(PROPERTY_FILTERS))
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run the theorem checks over a catalog directory")
    p.add_argument("--catalog", required=True)
    p.add_argument("--theorem", default="all", help="'all' or comma-separated ids: " + ", ".join(THEOREM_IDS))
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    reading(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="sweep for counterexamples to an open question")
    p.add_argument("--question", choices=QUESTIONS, required=True)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--out", default=".")
    p.add_argument("--budget", type=float)
    p.add_argument("--workers", type=int, default=1)
    reading(p)
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (UndefinedForNonRT, HypothesisViolation) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except BudgetExceeded as e:
        print(f"BudgetExceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
