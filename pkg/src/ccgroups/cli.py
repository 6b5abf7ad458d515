"""Command line front end: read a problem file, complete it, answer its queries."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .completion import DEFAULT_FUEL
from .decide import (
    UnsupportedMode,
    enumerate_normal_forms,
    extract_presentation,
    normalize,
    rewrite_trace,
)
from .problem import Problem, ProblemError, parse_problem
from .pipeline import Solved, solve
from .terms import render
from .theory import Mode

EXIT_OK, EXIT_INPUT, EXIT_DIVERGED = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ccgroups",
        description="Ground equational reasoning modulo associativity, monoids and groups.",
    )
    p.add_argument("problem", help="problem file, or - for stdin")
    p.add_argument("--fuel", type=int, default=None, help=f"completion step budget (default {DEFAULT_FUEL})")
    p.add_argument("--mode", choices=["auto"], default="auto", help="theory mode; inferred from the theory blocks")
    p.add_argument("--trace", action="store_true", help="include the completion trace and query rewrite traces")
    p.add_argument("--json", action="store_true", help="print one JSON document")
    p.add_argument("--show-presentation", action="store_true", help="print the extracted monoid presentation")
    p.add_argument("--enumerate-nf", type=int, metavar="L", default=None, help="list irreducible words up to length L")
    p.add_argument("--skip-unit-deduce", action="store_true", help="skip overlaps with unit-instance rules")
    return p


def run(problem: Problem, args: argparse.Namespace) -> tuple[dict, Solved]:
    """Run the pipeline and collect a report with a fixed key order."""
    solved = solve(problem, fuel=args.fuel, skip_unit_deduce=args.skip_unit_deduce, trace=args.trace)
    res = solved.result
    report: dict = {
        "mode": problem.cfg.mode.value,
        "status": res.status.value,
        "steps": res.steps_used,
        "rules": [r.text for r in res.rules],
        "queries": [],
    }
    for s, t in problem.queries:
        q: dict = {"lhs": render(s), "rhs": render(t)}
        if solved.completed:
            ns, nt = normalize(s, solved.system), normalize(t, solved.system)
            q["verdict"] = "equal" if ns is nt else "not equal"
            q["normal_forms"] = [render(ns), render(nt)]
            if args.trace:
                q["trace"] = [
                    [render(x) + (f"  [{tag}]" if tag else "") for x, tag in rewrite_trace(side, solved.system)]
                    for side in (s, t)
                ]
        else:
            q["verdict"] = "undecided"
        report["queries"].append(q)
    if args.trace:
        report["trace"] = list(res.trace)
    group = problem.cfg.mode in (Mode.GROUP, Mode.MULTIGROUP)
    if args.show_presentation:
        if not group:
            raise UnsupportedMode("presentations are only defined for group theories")
        pres = extract_presentation(solved.augmented)
        report["presentation"] = {"generators": list(pres.generators), "relations": pres.render()}
    if args.enumerate_nf is not None:
        if not group:
            raise UnsupportedMode("normal form enumeration needs a group theory")
        if solved.completed:
            gens = extract_presentation(solved.augmented).generators
            words, grew = enumerate_normal_forms(solved.system, gens, args.enumerate_nf)
            report["normal_forms"] = {"max_len": args.enumerate_nf, "words": words, "still_growing": grew}
        else:
            report["normal_forms"] = None
    return report, solved


def format_text(report: dict) -> str:
    lines = [f"mode: {report['mode']}", f"status: {report['status']} after {report['steps']} steps"]
    lines.append(f"rules ({len(report['rules'])}):")
    lines += [f"  {r}" for r in report["rules"]]
    for q in report["queries"]:
        lines.append(f"query {q['lhs']} = {q['rhs']}: {q['verdict']}")
        if "normal_forms" in q:
            lines.append(f"  normal forms: {q['normal_forms'][0]} | {q['normal_forms'][1]}")
        for side in q.get("trace", []):
            lines.append("  " + " => ".join(side))
    if "presentation" in report:
        p = report["presentation"]
        lines.append("generators: " + " ".join(p["generators"]))
        lines += [f"  {r}" for r in p["relations"]]
    if report.get("normal_forms"):
        nf = report["normal_forms"]
        more = " (still growing)" if nf["still_growing"] else ""
        lines.append(f"irreducible words up to length {nf['max_len']}: {len(nf['words'])}{more}")
        lines.append("  " + " ".join(nf["words"]))
    if "trace" in report:
        lines.append("completion trace:")
        lines += [f"  {x}" for x in report["trace"]]
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.fuel is not None and args.fuel <= 0:
        print("error: --fuel must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.problem == "-":
            text = sys.stdin.read()
        else:
            with open(args.problem, encoding="utf-8") as fh:
                text = fh.read()
        problem = parse_problem(text)
        report, solved = run(problem, args)
    except (OSError, ProblemError, UnsupportedMode) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print(format_text(report))
    return EXIT_OK if solved.completed else EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
