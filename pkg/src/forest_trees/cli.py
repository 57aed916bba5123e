"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 internal assertion or oracle
mismatch, 3 a suite or scan found a counterexample.  Every number in the
JSON written to stdout is a decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .closed_form import PairVector, phi_eval, tau_forest
from .errors import DivisibilityViolation, ForestTreesError, ValidationError
from .forest import ForestInstance, validate
from .identities import IDS, run_suite
from .kirchhoff import count_forced_trees, tau_kirchhoff
from .tripartite import conjecture_rhs, scan_conjecture, summarize, TripartiteProfile
from .weighted import contract_forest

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _stringify(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _emit(payload, out) -> None:
    out.write(json.dumps(_stringify(payload), indent=2) + "\n")


def parse_sizes(text: str) -> list[int]:
    """``"1..5"`` or ``"2,4,6"`` (ranges may be mixed in: ``"1..3,6"``)."""
    sizes = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            sizes.extend(range(int(lo), int(hi) + 1))
        else:
            sizes.append(int(chunk))
    return sizes


def cmd_count(args, out) -> int:
    try:
        with open(args.instance, encoding="utf-8") as fh:
            instance = ForestInstance.from_json(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read {args.instance}: {exc}") from exc
    profile = validate(instance)
    payload = {"parts": list(instance.parts), "profile": [list(c) for c in profile.components]}
    if len(instance.parts) == 2:
        tau = tau_forest(*instance.parts, profile)
        payload["method"] = "closed_form"
    else:
        tau = tau_kirchhoff(contract_forest(instance))
        payload["method"] = "kirchhoff"
        if len(instance.parts) == 3:
            payload["conjecture_rhs"] = conjecture_rhs(TripartiteProfile.of(instance))
    payload["tau"] = tau
    code = EXIT_OK
    if args.oracle == "none":
        payload["oracle"] = {"method": "none"}
    else:
        if args.oracle == "kirchhoff":
            expected = tau_kirchhoff(contract_forest(instance))
        else:
            expected = count_forced_trees(instance)
        match = expected == tau
        payload["oracle"] = {"method": args.oracle, "tau": expected, "match": match}
        if not match:
            code = EXIT_INTERNAL
    _emit(payload, out)
    return code


def cmd_phi(args, out) -> int:
    try:
        values = [Fraction(v) for v in args.values]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {exc}") from exc
    v = PairVector.from_flat(values)
    _emit({"k": v.k, "pairs": [list(p) for p in v.pairs], "phi": phi_eval(v)}, out)
    return EXIT_OK


def cmd_identities(args, out) -> int:
    ids = list(IDS) if args.ids == "all" else [s.strip() for s in args.ids.split(",") if s.strip()]
    for id in ids:
        if id not in IDS:
            raise ValidationError(f"unknown identity {id!r}; expected one of {', '.join(IDS)}")
    try:
        sizes = parse_sizes(args.sizes)
    except ValueError as exc:
        raise ValidationError(f"bad --sizes {args.sizes!r}") from exc
    if args.trials < 0 or any(s < 1 for s in sizes):
        raise ValidationError("trials must be >= 0 and sizes >= 1")
    reports = [run_suite(id, sizes, args.trials, args.seed) for id in ids]
    ok = all(r.ok for r in reports)
    _emit(
        {
            "seed": args.seed,
            "trials": args.trials,
            "sizes": sizes,
            "reports": [r.to_dict() for r in reports],
            "pass": ok,
        },
        out,
    )
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def cmd_conjecture(args, out) -> int:
    sink = None
    if args.out:
        try:
            sink = open(args.out, "w", encoding="utf-8")
        except OSError as exc:
            raise ValidationError(f"cannot write {args.out}: {exc}") from exc
    try:
        reports = scan_conjecture(args.max_n, args.trials, args.seed, out=sink)
    finally:
        if sink is not None:
            sink.close()
    summary = summarize(reports)
    payload = {"max_n": args.max_n, "trials": args.trials, "seed": args.seed, "out": args.out}
    payload.update(summary)
    _emit(payload, out)
    return EXIT_COUNTEREXAMPLE if summary["violations"] != "0" else EXIT_OK


def cmd_selftest(args, out) -> int:
    from .acceptance import CHECKS, run_checks

    if args.list:
        _emit({"checks": [{"name": c.name, "title": c.title} for c in CHECKS]}, out)
        return EXIT_OK
    results = run_checks(only=args.only, log=sys.stderr)
    ok = all(r["pass"] for r in results)
    _emit({"checks": results, "pass": ok}, out)
    return EXIT_OK if ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="forest-trees", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count spanning trees containing a forest")
    p.add_argument("instance", help="JSON instance file")
    p.add_argument("--oracle", choices=("none", "kirchhoff", "enumerate"), default="none")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("phi", help="evaluate phi at x1 y1 x2 y2 ... (use -- before negatives like -1/2)")
    p.add_argument("values", nargs="+")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("identities", help="run exact identity suites")
    p.add_argument("--ids", default="all", help="comma list of identity tags, or 'all'")
    p.add_argument("--sizes", default="1..6")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("conjecture", help="scan the tripartite lower bound")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="JSON-lines report file")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--list", action="store_true", help="list checks without running them")
    p.add_argument("--only", action="append", help="run only the named check (repeatable)")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except DivisibilityViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ForestTreesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
