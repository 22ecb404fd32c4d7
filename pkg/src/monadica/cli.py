"""Command-line front end.

Exit codes: 0 success, 1 failed verification or other error, 2 parse error,
3 factorization failure, 4 atom bound exceeded, 5 element not in the monoid.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .divisor import divisor_theory
from .errors import AtomBoundExceeded, FactorizationFailed, MonadicaError, NotMember, ParseError
from .fixtures import BLOCKS, run_fixtures
from .invariants import growth_schedule, residue_family
from .monoid import build_context, membership
from .padic import DEFAULT_DEPTH_CAP
from .report import (
    SCHEMA,
    analysis_report,
    atoms_report,
    bounds_report,
    dumps,
    pretty_analysis,
    profiles_report,
    table,
)
from .submonoid import full_submonoid, monadic_submonoid
from .zpoly import parse

EXIT_CODES = (
    (ParseError, 2),
    (FactorizationFailed, 3),
    (AtomBoundExceeded, 4),
    (NotMember, 5),
)


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monadica", description="Divisor theory of monadic submonoids of Int(Z)."
    )
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable tables")
    common.set_defaults(pretty=False)
    common.add_argument("--atom-degree-bound", type=int, default=None)
    common.add_argument("--davenport-cap", type=int, default=12)
    common.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full divisor theory of [[f]]")
    p.add_argument("poly")
    p.add_argument("--bounds", action="store_true", help="add Davenport-based invariant bounds")

    p = sub.add_parser("submonoid", parents=[common], help="[[g]] inside [[f]]")
    p.add_argument("ambient")
    p.add_argument("generator")

    p = sub.add_parser("invariants", parents=[common], help="elasticity and tame-degree lower bounds")
    p.add_argument("poly", nargs="?")
    p.add_argument("--family", choices=["schedule", "residue"])
    p.add_argument("--max-i", type=int, default=3)
    p.add_argument("--a", type=_ints, help="comma-separated coefficients a_i")
    p.add_argument("--p", type=_ints, help="comma-separated primes p_i")

    p = sub.add_parser("verify-reference", parents=[common], help="replay the reference fixtures")
    p.add_argument("--only", action="append", choices=BLOCKS)

    p = sub.add_parser("profiles", parents=[common], help="valuation profiles of the factors")
    p.add_argument("poly")

    p = sub.add_parser("atoms", parents=[common], help="atoms of [[f]]")
    p.add_argument("poly")
    return parser


def _emit(report: dict, pretty: bool, text: str | None = None) -> None:
    sys.stdout.write((text if pretty and text is not None else dumps(report, pretty)) + "\n")


def cmd_analyze(args: argparse.Namespace) -> int:
    ctx = build_context(parse(args.poly), depth_cap=args.depth_cap)
    theory = divisor_theory(ctx, degree_bound=args.atom_degree_bound)
    report = analysis_report(args.poly, theory)
    if args.bounds:
        report["bounds"] = bounds_report(args.poly, theory, args.davenport_cap)["bounds"]
    _emit(report, args.pretty, pretty_analysis(report))
    return 0


def cmd_submonoid(args: argparse.Namespace) -> int:
    ctx = build_context(parse(args.ambient), depth_cap=args.depth_cap)
    theory = divisor_theory(ctx, degree_bound=args.atom_degree_bound)
    base = monadic_submonoid(theory, ctx.generator) if ctx.generator else full_submonoid(theory)
    g = membership(ctx, parse(args.generator))
    if g is None:
        raise NotMember(f"{args.generator} does not lie in [[{args.ambient}]]")
    monadic_submonoid(base, g)
    report = analysis_report(args.generator, theory, generator=g)
    _emit(report, args.pretty, pretty_analysis(report))
    return 0


def cmd_invariants(args: argparse.Namespace) -> int:
    cap = args.davenport_cap
    if args.family == "schedule":
        entries = growth_schedule(args.max_i, cap)
        report = {"schema": SCHEMA, "family": "schedule", "rows": [e.to_json() for e in entries]}
        rows = [
            [e.i, len(e.primes), e.bounds.davenport.value, e.bounds.davenport.exact,
             e.bounds.elasticity_lb, e.bounds.tame_lb]
            for e in entries
        ]
        text = table(["i", "|P_i|", "D", "exact", "elasticity >=", "tame >="], rows)
    elif args.family == "residue":
        if not args.a or not args.p:
            raise ValueError("--family residue needs --a and --p")
        inst = residue_family(len(args.p), args.a, args.p, cap)
        report = {"schema": SCHEMA, "family": "residue", **inst.to_json()}
        text = table(["check", "passed", "detail"], [[c.name, c.passed, c.detail] for c in inst.checks])
    else:
        if args.poly is None:
            raise ValueError("give a polynomial or --family")
        ctx = build_context(parse(args.poly), depth_cap=args.depth_cap)
        theory = divisor_theory(ctx, degree_bound=args.atom_degree_bound)
        report = bounds_report(args.poly, theory, cap)
        b = report["bounds"]
        text = table(
            ["class group", "D", "exact", "elasticity >=", "tame >="],
            [[report["class_group"]["description"], b["davenport"], b["exact"], b["elasticity_lb"], b["tame_lb"]]],
        )
    _emit(report, args.pretty, text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_fixtures(only=args.only)
    failed = [r for r in results if not r.passed]
    report = {
        "schema": SCHEMA,
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "results": [r.to_json() for r in results],
    }
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.block}/{r.name}" for r in results]
    for r in failed:
        lines.append(f"  {r.block}/{r.name}: expected {r.expected!r}, got {r.actual!r}")
        if r.error:
            lines.append(f"  error: {r.error}")
    lines.append(f"{len(results) - len(failed)}/{len(results)} passed")
    _emit(report, args.pretty, "\n".join(lines))
    for r in failed:
        sys.stderr.write(f"FAIL {r.block}/{r.name}: expected {r.expected!r}, got {r.actual!r}\n")
    return 1 if failed else 0


def cmd_profiles(args: argparse.Namespace) -> int:
    ctx = build_context(parse(args.poly), depth_cap=args.depth_cap)
    report = profiles_report(args.poly, ctx)
    lines = [f"{p['p']}: {p['profiles']}" for p in report["context"]["profiles"]]
    _emit(report, args.pretty, "\n".join(lines))
    return 0


def cmd_atoms(args: argparse.Namespace) -> int:
    ctx = build_context(parse(args.poly), depth_cap=args.depth_cap)
    report = atoms_report(args.poly, ctx, args.atom_degree_bound)
    text = table(
        ["id", "element", "x", "m"],
        [[a["id"], a["polynomial"], a["element"]["x"], a["element"]["m"]] for a in report["atoms"]["list"]],
    )
    _emit(report, args.pretty, text)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "submonoid": cmd_submonoid,
    "invariants": cmd_invariants,
    "verify-reference": cmd_verify,
    "profiles": cmd_profiles,
    "atoms": cmd_atoms,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except MonadicaError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        for kind, code in EXIT_CODES:
            if isinstance(exc, kind):
                return code
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
