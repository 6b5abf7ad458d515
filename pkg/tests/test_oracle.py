import ast
from pathlib import Path

import pytest

import golden
from ccgroups import oracle
from ccgroups.oracle import (
    AxiomSet,
    OracleResourceError,
    Verdict,
    enumerate_terms,
    oracle_closure,
    oracle_decide,
)
from ccgroups.terms import app, const, fbar

a, b, one = const("a"), const("b"), const("1")
GROUP = AxiomSet((("f", "1", "i"),))


def h(x):
    return app("h", x)


def test_congruence_on_free_symbols():
    uni = oracle_closure([(a, b)], AxiomSet(), ["a", "b"], {"h": 1}, 3)
    assert oracle_decide(h(a), h(b), uni) is Verdict.EQUAL
    assert oracle_decide(h(h(a)), h(h(b)), uni) is Verdict.EQUAL


def test_nothing_derived_without_equations():
    uni = oracle_closure([], AxiomSet(), ["a", "b"], {"h": 1}, 3)
    assert oracle_decide(a, b, uni) is Verdict.NOT_DERIVED_AT_BOUND


def test_intro_query_in_the_universe():
    p = golden.problem("intro")
    funs = {"h": 1, "i": 1}
    uni = oracle_closure(p.equations, AxiomSet.from_config(p.cfg), p.signature.constants, funs, 5)
    assert oracle_decide(*p.queries[0], uni) is Verdict.EQUAL


def test_group_axioms_without_derived_identities():
    pure = AxiomSet((("f", "1", "i"),), derived=False)
    uni = oracle_closure([], pure, ["a", "1"], {"i": 1}, 4)
    assert oracle_decide(app("f", a, app("i", a)), one, uni) is Verdict.EQUAL
    assert oracle_decide(app("f", a, one), a, uni) is Verdict.EQUAL


def test_derived_identities_reach_further_at_small_bounds():
    t = app("i", app("i", a))
    pure = oracle_closure([], AxiomSet((("f", "1", "i"),), derived=False), ["a", "1"], {"i": 1}, 3)
    full = oracle_closure([], GROUP, ["a", "1"], {"i": 1}, 3)
    assert oracle_decide(t, a, pure) is Verdict.NOT_DERIVED_AT_BOUND
    assert oracle_decide(t, a, full) is Verdict.EQUAL


def test_associativity_is_built_in():
    ax = AxiomSet(free_assoc=frozenset({"f"}))
    uni = oracle_closure([(app("f", a, b), a)], ax, ["a", "b"], {}, 4)
    assert oracle_decide(app("f", a, b, b), a, uni, {"f"}) is Verdict.EQUAL
    assert oracle_decide(app("f", app("f", a, b), b), a, uni, {"f"}) is Verdict.EQUAL


def test_outside_universe_is_an_error():
    uni = oracle_closure([], AxiomSet(), ["a"], {"h": 1}, 2)
    with pytest.raises(KeyError):
        oracle_decide(h(h(a)), a, uni)


def test_enumeration_counts():
    assert len(enumerate_terms(["a", "b"], {"h": 1}, (), 3)) == 6
    # words over {a,b} of length 2 and 3 plus the constants
    assert len(enumerate_terms(["a", "b"], {}, ["f"], 4)) == 2 + 4 + 8


def test_resource_limit():
    with pytest.raises(OracleResourceError):
        enumerate_terms(["a", "b", "c"], {"h": 1}, ["f"], 9, limit=1000)


def test_closure_is_a_congruence():
    p = golden.problem("group_running")
    uni = oracle_closure(p.equations, AxiomSet.from_config(p.cfg), p.signature.constants, {"h": 1, "i": 1}, 5)
    seen = {}
    for t in uni.terms:
        if t.head in ("h", "i"):
            key = (t.head, uni.class_of(t.args[0]))
            if key in seen:
                assert uni.class_of(seen[key]) == uni.class_of(t)
            seen[key] = t
        elif t.args:
            w = t.args
            for k in range(1, len(w)):
                left, right = fbar("f", w[:k]), fbar("f", w[k:])
                if left in uni and right in uni:
                    key = ("f", uni.class_of(left), uni.class_of(right))
                    if key in seen:
                        assert uni.class_of(seen[key]) == uni.class_of(t)
                    seen[key] = t


def test_oracle_depends_only_on_the_term_module():
    tree = ast.parse(Path(oracle.__file__).read_text())
    local = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom) and node.level:
            local.add(node.module)
        elif isinstance(node, ast.ImportFrom) and (node.module or "").startswith("ccgroups"):
            local.add(node.module)
    assert local == {"terms"}


def test_dihedral_group_terms_fall_into_six_classes_at_bound_nine():
    # the bounded closure needs room for detours: at bound 6 it still separates
    # some equal group elements, at bound 9 every group term lands in one of six classes
    p = golden.problem("dihedral")
    uni = oracle_closure(p.equations, AxiomSet.from_config(p.cfg), p.signature.constants, {"h": 1, "i": 1}, 9)
    ha = h(a)
    elems = [t for t in uni.terms if all(x.head != "h" or x is ha for x in t.subterms())]
    assert len({uni.class_of(t) for t in elems}) == 6
