"""Command-line front end.

Exit codes: 0 ok, 1 a check failed, 2 usage / parse / build error.
Dihedral groups are written ``Dn`` and have order 2n.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import groups
from .catalog import generate_catalog, witness_family
from .decomposition import decompose
from .errors import CensusError
from .grammar import parse
from .groups import build
from .report import invariant_report
from .verify import SUITES, VerifyOptions, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _build_text(text: str, cap: int):
    return build(parse(text), cap)


def cmd_invariants(args) -> int:
    g = _build_text(args.spec, args.cap)
    rep = invariant_report(g)
    print(_dump(rep.to_json()) if args.json else rep.render())
    return EXIT_OK if all(rep.checks.values()) else EXIT_FAIL


def cmd_decompose(args) -> int:
    g = _build_text(args.spec, args.cap)
    d = decompose(g)
    data = d.to_json()
    if args.json:
        print(_dump(data))
    else:
        part = " x ".join(f"C{p}^{k}" if k > 1 else f"C{p}" for p, k in d.cyclic_part) or "trivial"
        print(f"group        {data['spec']}")
        print(f"cyclic part  {part}  (order {d.cyclic_order})")
        print(f"core         order {data['core_order']}, c={data['core_c']}, lambda={data['core_lambda']}")
    return EXIT_OK


def _parse_suites(raw: str) -> tuple[str, ...]:
    names = [s.strip() for s in raw.split(",") if s.strip()]
    if names == ["all"]:
        return SUITES
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown suite(s) {bad}; choose from all, {', '.join(SUITES)}")
    return tuple(n for n in SUITES if n in names)


def cmd_verify(args) -> int:
    opts = VerifyOptions(bound=args.bound, suites=args.suite, cap=args.cap, seed=args.seed, perturb=args.perturb)
    results = run_verify(opts)
    passed = Counter()
    failed = Counter()
    for suite, rep in results:
        (passed if rep.verdict else failed)[suite] += 1
        if args.json:
            print(_dump({"suite": suite, **rep.to_json()}))
        elif not rep.verdict:
            print(f"FAIL [{suite}] {rep.spec} {rep.bound.value}: lhs={rep.lhs} rhs={rep.rhs} {rep.detail}")
    summary = {
        suite: {"passed": passed[suite], "failed": failed[suite]}
        for suite in ("audit",) + opts.suites
        if passed[suite] or failed[suite]
    }
    if args.json:
        print(_dump({"summary": summary, "bound": opts.bound, "failed": sum(failed.values())}))
    else:
        for suite, counts in summary.items():
            print(f"{suite:<15} passed {counts['passed']:>7}  failed {counts['failed']:>5}")
        print("all checks passed" if not failed else f"{sum(failed.values())} check(s) FAILED")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_catalog(args) -> int:
    sys.stdout.write(generate_catalog(args.bound, cap=args.cap).export())
    return EXIT_OK


def cmd_witness(args) -> int:
    for spec in witness_family(args.n, args.count):
        print(spec)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output (JSON lines)")
    common.add_argument("--cap", type=int, default=groups.ORDER_CAP, help="engine order cap (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized audit sampling")

    parser = argparse.ArgumentParser(
        prog="cyclic-census",
        description="Count cyclic and maximal cyclic subgroups of finite groups and verify bounds on them. "
        "Spec grammar: C12, D6 (dihedral of ORDER 12), Q16 / Dic4, Ab[2,4,8], SD(3,8;2), C5 x D4, file:PATH.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="order, c, lambda, center, derived length")
    p.add_argument("spec")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("decompose", parents=[common], help="split off cyclic coprime direct factors")
    p.add_argument("spec")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="run verification suites over the catalog")
    p.add_argument("--bound", type=int, default=64, help="catalog order bound (default %(default)s)")
    p.add_argument("--suite", type=_parse_suites, default=SUITES, help="all or comma list of: " + ",".join(SUITES))
    p.add_argument("--perturb", action="store_true", help="fault injection: corrupt one Cayley entry per group")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="export catalog specs, one per line")
    p.add_argument("--bound", type=int, default=64)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("witness", parents=[common], help="noncyclic groups with exactly n cyclic subgroups")
    p.add_argument("n", type=int)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CensusError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
