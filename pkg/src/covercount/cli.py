"""covercount command line.

Exit codes: 0 success, 1 invalid input, 2 verification mismatch,
3 work budget exceeded.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import closed_forms
from .errors import CoverCountError
from .partitions import Partition, format_list, parse_list
from .permutations import DEFAULT_BUDGET, HurwitzQuery, hurwitz, marked_hurwitz
from .sab import MemoStore, SKey, expand, s_invariant, u_key, validate_key
from .twos import TwosKey, n_twos_closed, n_twos_recursive
from .verify import SUITES, run_suite, u_table

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(CoverCountError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def envelope(invariant: str, key: str, value, started: float, **extra) -> dict:
    out = {"invariant": invariant, "key": key, "value": rational(value),
           "timing": {"seconds": round(time.perf_counter() - started, 6)}}
    out.update(extra)
    return out


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _budget(args) -> int:
    if args.max_work < 1:
        raise UsageError("--max-work must be positive")
    return args.max_work


def _memo(args) -> MemoStore:
    path = args.cache or os.environ.get("COVERCOUNT_CACHE") or None
    return MemoStore.open(path)


def cmd_hurwitz(args) -> int:
    started = time.perf_counter()
    if args.degree is None:
        raise UsageError("--degree is required")
    profiles = [Partition(parse_list(p)) for p in args.profile]
    connected = args.connected or args.marked
    query = HurwitzQuery(args.degree, tuple(profiles), connected)
    budget = _budget(args)
    if args.marked:
        value = marked_hurwitz(args.degree, profiles, budget=budget, workers=args.workers)
        name, key = "marked_hurwitz", "Hm" + query.key()[2:]
    else:
        value = hurwitz(args.degree, profiles, connected=connected, budget=budget,
                        workers=args.workers)
        name, key = ("connected_hurwitz" if connected else "hurwitz"), query.key()
    if args.json:
        print(dump(envelope(name, key, value, started)))
    else:
        print(value)
    return EXIT_OK


LEMMA_ARGS = {
    "twos-complete": ("k",),
    "twos-cycles": ("k", "a", "b"),
    "twos-even": ("k",),
    "twos-odd": ("k",),
    "near-cycle-pair": ("degree", "n", "a"),
}


def cmd_closed_form(args) -> int:
    started = time.perf_counter()
    family = args.lemma.replace("-", "_")
    formula, profiles_of = closed_forms.FAMILIES[family]
    values = []
    for name in LEMMA_ARGS[args.lemma]:
        raw = getattr(args, name)
        if raw is None:
            raise UsageError(f"{args.lemma} needs --{name}")
        values.append(int(raw))
    value = formula(*values)
    key = f"{family}(" + ",".join(map(str, values)) + ")"
    extra = {}
    status = EXIT_OK
    if args.oracle:
        profiles = profiles_of(*values)
        d = sum(profiles[0])
        oracle = hurwitz(d, profiles, connected=True, budget=_budget(args))
        extra["oracle"] = {"profiles": [format_list(p) for p in profiles],
                           "connected": rational(oracle), "match": oracle == value}
        if oracle != value:
            status = EXIT_MISMATCH
    if args.json:
        print(dump(envelope(family, key, value, started, **extra)))
    else:
        print(value)
        if args.oracle:
            verdict = "match" if extra["oracle"]["match"] else "MISMATCH"
            print(f"oracle (connected): {oracle}  {verdict}")
    return status


def cmd_n_twos(args) -> int:
    started = time.perf_counter()
    if args.k is None or args.mu is None:
        raise UsageError("n-twos needs --k and --mu")
    key = TwosKey(args.k, Partition(parse_list(args.mu)))
    results = {}
    if args.method in ("closed", "both"):
        results["closed"] = n_twos_closed(key.k, key.mu)
    if args.method in ("recursive", "both"):
        results["recursive"] = n_twos_recursive(key.k, key.mu)
    agree = len(set(results.values())) == 1
    value = next(iter(results.values()))
    if args.json:
        methods = {m: rational(v) for m, v in results.items()}
        print(dump(envelope("n_twos", str(key), value, started, methods=methods, agree=agree)))
    else:
        for method, v in results.items():
            print(f"{method}: {v}" if len(results) > 1 else v)
    if not agree:
        print(f"closed form and recursion disagree for {key}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _trace(key: SKey, memo: MemoStore, budget: int) -> dict:
    rule, terms, constant = expand(key, budget=budget)
    rows = []
    for term in terms:
        child_value = s_invariant(term.child, memo, budget=budget)
        rows.append({"rule": term.rule, "coefficient": rational(term.coefficient),
                     "child": term.child.canonical(), "child_value": rational(child_value)})
    return {"rule": rule, "constant": rational(constant), "terms": rows}


def cmd_s(args) -> int:
    started = time.perf_counter()
    if args.mu is None:
        raise UsageError("s needs --mu (use --mu '' for the empty partition)")
    key = SKey.make(parse_list(args.a or ""), parse_list(args.b or ""), parse_list(args.mu))
    memo = _memo(args)
    budget = _budget(args)
    value = s_invariant(key, memo, budget=budget)
    if key.mu and validate_key(key):
        memo.persist(key.canonical())
    trace = _trace(key, memo, budget) if args.trace else None
    if args.json:
        extra = {"cache": memo.stats()}
        if trace is not None:
            extra["trace"] = trace
        print(dump(envelope("S", key.canonical(), value, started, **extra)))
    else:
        print(value)
        if trace is not None:
            print(f"rule: {trace['rule']}")
            if trace["constant"] != rational(0) or not trace["terms"]:
                print(f"  constant {_fraction(trace['constant'])}")
            for row in trace["terms"]:
                print(f"  {_fraction(row['coefficient'])} x {row['child']} "
                      f"= {_fraction(row['coefficient'])} x {_fraction(row['child_value'])}"
                      f"  [{row['rule']}]")
    return EXIT_OK


def _fraction(r: dict) -> Fraction:
    return Fraction(int(r["num"]), int(r["den"]))


def cmd_u_table(args) -> int:
    started = time.perf_counter()
    memo = _memo(args)
    rows = u_table(args.max_degree, memo, _budget(args))
    for row in rows:
        for a, cell in enumerate(row["cells"], start=1):
            if cell is not None:
                memo.persist(u_key(row["d"], a).canonical())
    ok = all(r["quartic_ok"] and all(c is None or c["recurrence"] is not False for c in r["cells"])
             for r in rows)
    if args.json:
        out = [{"d": r["d"], "quartic": str(r["quartic"]), "quartic_ok": r["quartic_ok"],
                "cells": [None if c is None else
                          {"a": c["a"], "value": rational(c["value"]), "recurrence": c["recurrence"]}
                          for c in r["cells"]]} for r in rows]
        print(dump({"invariant": "U", "rows": out, "ok": ok,
                    "timing": {"seconds": round(time.perf_counter() - started, 6)}}))
    else:
        marks = {True: "✓", False: "✗", None: " "}
        header = "d  " + "".join(f"{'a=' + str(a):>10}" for a in range(1, 6)) + f"{'quartic':>10}"
        print(header)
        for r in rows:
            cells = "".join(
                f"{'-':>10}" if c is None else f"{str(c['value']) + marks[c['recurrence']]:>10}"
                for c in r["cells"])
            print(f"{r['d']:<3}{cells}{str(r['quartic']) + marks[r['quartic_ok']]:>10}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    started = time.perf_counter()
    checks = run_suite(args.suite, args.max_degree, _budget(args), max_k=args.k)
    failed = [c for c in checks if not c.passed]
    if args.json:
        print(dump({"suite": args.suite, "max_degree": args.max_degree,
                    "checks": [c.as_dict() for c in checks],
                    "passed": len(checks) - len(failed), "failed": len(failed),
                    "timing": {"seconds": round(time.perf_counter() - started, 6)}}))
    else:
        for c in checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"{mark}  [{c.suite}] {c.name}: expected {c.expected}, computed {c.computed}"
            if c.detail and (c.suite == "appendix" or not c.passed):
                line += f"  ({c.detail})"
            print(line)
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    for c in failed:
        print(f"mismatch: {c.name}", file=sys.stderr)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")
    common.add_argument("--max-work", type=int, default=DEFAULT_BUDGET,
                        help="cap on enumerated permutation tuples (default 10^8)")
    common.add_argument("--cache", default=None,
                        help="S-value cache file (default: $COVERCOUNT_CACHE)")
    common.add_argument("--workers", type=int, default=1,
                        help="processes for the tuple enumeration")

    parser = _Parser(prog="covercount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hurwitz", parents=[common], help="brute-force Hurwitz number")
    p.add_argument("--degree", type=int)
    p.add_argument("--profile", action="append", default=[], help="comma-separated partition")
    conn = p.add_mutually_exclusive_group()
    conn.add_argument("--connected", dest="connected", action="store_true")
    conn.add_argument("--disconnected", dest="connected", action="store_false")
    p.add_argument("--marked", action="store_true", help="label the points of every fiber")
    p.set_defaults(func=cmd_hurwitz, connected=False)

    p = sub.add_parser("closed-form", parents=[common], help="evaluate a closed-form Hurwitz family")
    p.add_argument("--lemma", required=True, choices=sorted(LEMMA_ARGS))
    for flag in ("k", "a", "b", "n", "degree"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("n-twos", parents=[common], help="N_(2^k),(2^k)(mu)")
    p.add_argument("--k", type=int)
    p.add_argument("--mu")
    p.add_argument("--method", choices=("closed", "recursive", "both"), default="both")
    p.set_defaults(func=cmd_n_twos)

    p = sub.add_parser("s", parents=[common], help="S_{a,b}(mu) by recursion")
    p.add_argument("--a", default="")
    p.add_argument("--b", default="")
    p.add_argument("--mu")
    p.add_argument("--trace", action="store_true", help="show the first recursion step")
    p.set_defaults(func=cmd_s)

    p = sub.add_parser("u-table", parents=[common], help="grid of U_{d,a} with the quartic")
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_u_table)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--k", type=int, default=None, help="largest k for the twos suite")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str]) -> int:
    json_mode = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CoverCountError as exc:
        if json_mode:
            print(dump({"error": {"code": exc.code, "message": str(exc)}}))
        print(f"covercount: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", EXIT_INVALID)
    except (OSError, ValueError) as exc:
        if json_mode:
            print(dump({"error": {"code": "invalid_input", "message": str(exc)}}))
        print(f"covercount: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
