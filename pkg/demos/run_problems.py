"""Run every bundled problem file and print a one-screen summary of each.

    python3 demos/run_problems.py
"""

from pathlib import Path

from ccgroups.decide import normalize
from ccgroups.pipeline import solve
from ccgroups.problem import parse_problem
from ccgroups.terms import render

HERE = Path(__file__).parent / "problems"


def main() -> None:
    for path in sorted(HERE.glob("*.txt")):
        problem = parse_problem(path.read_text())
        solved = solve(problem, fuel=5_000, trace=False)
        res = solved.result
        print(f"== {path.stem} ({problem.cfg.mode.value}): {res.status.value}, "
              f"{res.steps_used} steps, {len(res.rules)} rules")
        for rule in res.rules[:8]:
            print(f"   {rule.text}")
        if len(res.rules) > 8:
            print(f"   ... {len(res.rules) - 8} more")
        for s, t in problem.queries:
            if not solved.completed:
                print(f"   {render(s)} = {render(t)}?  undecided")
                continue
            ns, nt = normalize(s, solved.system), normalize(t, solved.system)
            verdict = "yes" if ns is nt else "no"
            print(f"   {render(s)} = {render(t)}?  {verdict}  ({render(ns)} vs {render(nt)})")
        print()


if __name__ == "__main__":
    main()
