"""Deterministic JSON reports and plain-text tables."""
from __future__ import annotations

import json
from typing import Any

from .divisor import DivisorTheory, davenport_lower_bound, divisor_theory
from .invariants import InvariantBounds
from .monoid import MonadicElement, atoms as compute_atoms
from .padic import FContext, e_f_exponent
from .submonoid import (
    Submonoid,
    monadic_submonoid,
    restricted_divisor,
    restricted_primes,
    submonoid_class_group,
)
from .zpoly import certify_irreducible

SCHEMA = "monadica/1"


def dumps(report: dict, pretty: bool = False) -> str:
    """Canonical serialization: sorted keys, fixed separators."""
    if pretty:
        return json.dumps(report, sort_keys=True, indent=2)
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def context_section(ctx: FContext) -> dict:
    return {
        "n": ctx.n,
        "factors": [str(f) for f in ctx.factors],
        "multiplicities": list(ctx.multiplicities),
        "constant": {str(p): e for p, e in sorted(ctx.constant.items())},
        "primes": list(ctx.constant_primes),
        "profiles": [ctx.profile_sets[p].to_json() for p in ctx.constant_primes],
        "vertices": {
            str(p): [list(w) for w in ctx.profile_sets[p].vertices] for p in ctx.constant_primes
        },
        "generator": None if ctx.generator is None else ctx.generator.to_json(),
    }


def atoms_section(theory: DivisorTheory) -> dict:
    ctx = theory.ctx
    listing = []
    for i, a in enumerate(theory.atom_elements, start=1):
        entry: dict[str, Any] = {"id": i, "element": a.to_json(), "polynomial": str(a.polynomial(ctx))}
        entry["kind"] = "constant" if a.is_constant() else "poly"
        entry["e_f"] = {str(p): e for p, e in sorted(e_f_exponent(ctx, a).items())}
        listing.append(entry)
    out = theory.atoms.to_json()
    out["list"] = listing
    return out


def certification_section(theory: DivisorTheory) -> dict:
    return {
        "atoms_certified": theory.atoms.certified,
        "factor_certificates": [certify_irreducible(f) for f in theory.ctx.factors],
        "traces_cross_checked": True,
    }


def divisor_section(theory: DivisorTheory) -> dict:
    ctx = theory.ctx
    return {
        "primes": [P.to_json(ctx, i + 1) for i, P in enumerate(theory.primes)],
        "atom_divisors": theory.atom_divisors(),
        "class_group": theory.class_group.to_json(),
    }


def submonoid_section(sub: Submonoid) -> dict:
    prime_list = restricted_primes(sub)
    atoms = sub.atom_elements()
    out = sub.to_json()
    out["primes"] = [P.to_json(i + 1) for i, P in enumerate(prime_list)]
    out["atom_divisors"] = [restricted_divisor(sub, a, prime_list) for a in atoms]
    out["class_group"] = submonoid_class_group(sub).to_json()
    return out


def analysis_report(
    text: str,
    theory: DivisorTheory,
    generator: MonadicElement | None = None,
) -> dict:
    """Full report for ``[[f]]``, with a submonoid section when ``f`` avoids some primes."""
    ctx = theory.ctx
    gen = ctx.generator if generator is None else generator
    report: dict[str, Any] = {"schema": SCHEMA, "input": text}
    report["context"] = context_section(ctx)
    report["atoms"] = atoms_section(theory)
    report.update(divisor_section(theory))
    report["ambient_class_group"] = theory.class_group.to_json()
    report["certification"] = certification_section(theory)
    if gen is not None:
        sub = monadic_submonoid(theory, gen)
        if not sub.is_full():
            section = submonoid_section(sub)
            report["submonoid"] = section
            report["class_group"] = section["class_group"]
    return report


def profiles_report(text: str, ctx: FContext) -> dict:
    return {"schema": SCHEMA, "input": text, "context": context_section(ctx)}


def atoms_report(text: str, ctx: FContext, degree_bound: int | None) -> dict:
    atomset = compute_atoms(ctx, degree_bound=degree_bound)
    elems = atomset.all_atoms(ctx)
    out = atomset.to_json()
    out["list"] = [
        {"id": i, "element": a.to_json(), "polynomial": str(a.polynomial(ctx))}
        for i, a in enumerate(elems, start=1)
    ]
    return {"schema": SCHEMA, "input": text, "context": context_section(ctx), "atoms": out}


def effective_class_group(theory: DivisorTheory):
    """Class group of ``[[f]]`` itself: the submonoid group when ``f`` avoids some primes."""
    gen = theory.ctx.generator
    if gen is not None:
        sub = monadic_submonoid(theory, gen)
        if not sub.is_full():
            return submonoid_class_group(sub)
    return theory.class_group


def bounds_report(text: str, theory: DivisorTheory, cap: int) -> dict:
    cg = effective_class_group(theory)
    bounds = InvariantBounds.from_davenport(davenport_lower_bound(cg, cap))
    return {
        "schema": SCHEMA,
        "input": text,
        "class_group": cg.to_json(),
        "bounds": bounds.to_json(),
        "davenport_cap": cap,
    }


def table(headers: list[str], rows: list[list[Any]]) -> str:
    """Markdown table."""
    lines = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines)


def pretty_analysis(report: dict) -> str:
    out = [f"input: {report['input']}"]
    ctx = report["context"]
    out.append(f"factors: {', '.join(ctx['factors']) or '-'}; constant primes: {ctx['primes']}")
    out.append("")
    out.append(
        table(
            ["id", "kind", "element", "e_f"],
            [[a["id"], a["kind"], a["polynomial"], a["e_f"]] for a in report["atoms"]["list"]],
        )
    )
    out.append("")
    out.append(
        table(
            ["prime", "kind", "carrier", "trace"],
            [
                [P["id"], P["kind"], P.get("factor") or f"p={P['p']} w={P['profile']}", P["trace"]]
                for P in report["primes"]
            ],
        )
    )
    out.append("")
    out.append(f"ambient class group: {report['ambient_class_group']['description']}")
    if "submonoid" in report:
        sub = report["submonoid"]
        out.append(f"avoided primes: {sub['avoided']}; atoms: {sub['atoms']}")
        out.append(
            table(
                ["prime", "trace", "lifts"],
                [[P["id"], P["trace"], P["lifts"]] for P in sub["primes"]],
            )
        )
    out.append(f"class group: {report['class_group']['description']}")
    return "\n".join(out)


def analyse(text: str, ctx: FContext, degree_bound: int | None = None) -> dict:
    theory = divisor_theory(ctx, degree_bound=degree_bound)
    return analysis_report(text, theory)
