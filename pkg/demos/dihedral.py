"""The dihedral group of order 6, from three relations to a multiplication table.

A rotation ``a`` of order 3 and a reflection ``h(a)`` of order 2 with
``(a h(a))^2 = 1``.  Completion gives a convergent system whose irreducible
words are the six group elements.  Every short product of ``a`` and ``h(a)``
is normalized and evaluated in the permutation group on three points: equal
normal forms must mean equal permutations, and the six normal forms must
land on six different ones.

    python3 demos/dihedral.py
"""

from itertools import product
from pathlib import Path

from ccgroups.decide import enumerate_normal_forms, extract_presentation, normalize
from ccgroups.pipeline import solve
from ccgroups.problem import parse_problem, parse_term
from ccgroups.terms import render

PROBLEM = Path(__file__).parent / "problems" / "dihedral.txt"

# a rotates the three points, h(a) swaps the first two
MODEL = {"a": (1, 2, 0), "h(a)": (1, 0, 2)}
IDENTITY = (0, 1, 2)


def compose(p, q):
    return tuple(q[p[k]] for k in range(3))


def main() -> None:
    problem = parse_problem(PROBLEM.read_text())
    solved = solve(problem)
    res = solved.result
    print(f"completion: {res.status.value} after {res.steps_used} steps, {len(res.rules)} rules")

    pres = extract_presentation(solved.augmented)
    print("monoid presentation over", " ".join(pres.generators))
    for rel in pres.render():
        print("  ", rel)

    words, growing = enumerate_normal_forms(solved.system, pres.generators, 6)
    print(f"\nirreducible words up to length 6: {len(words)}{' (still growing)' if growing else ''}")
    print("  ", " ".join(words))

    # every product of a and h(a) with at most 4 factors
    seen: dict[str, tuple] = {}
    consistent = True
    for n in range(0, 5):
        for letters in product(MODEL, repeat=n):
            text = "1" if n == 0 else letters[0] if n == 1 else f"f({','.join(letters)})"
            perm = IDENTITY
            for x in letters:
                perm = compose(perm, MODEL[x])
            nf = render(normalize(parse_term(text, problem), solved.system))
            if seen.setdefault(nf, perm) != perm:
                consistent = False
                print(f"   model disagrees on {text}")
    print(f"\nproducts of up to 4 factors fall into {len(seen)} normal forms")
    print("each normal form has one permutation:", consistent)
    print("the normal forms are pairwise distinct in the model:", len(set(seen.values())) == len(seen))
    for nf, perm in seen.items():
        print(f"   {nf:12} {perm}")


if __name__ == "__main__":
    main()
