import golden
from ccgroups.augment import augment, unit_table
from ccgroups.flatten import ConstRegistry, FlatEquation, phase1
from ccgroups.oracle import AxiomSet, oracle_closure
from ccgroups.terms import Cmp, Term, app, const, term_compare
from ccgroups.theory import GroupSig, TheoryConfig

one = const("1")


def augmented(name):
    p = golden.problem(name)
    flat, reg = phase1(p.equations, p.cfg, p.constants)
    return p, augment(flat, reg, p.cfg)


def rendered(eqs):
    return {frozenset(map(repr, e.sides)) for e in eqs}


def pairs(*items):
    return {frozenset(x.split(" = ")) for x in items}


def test_group_running_inverse_names_and_tables():
    _, aug = augmented("group_running")
    assert rendered(aug.named_inverses) == pairs("i(b) = c3", "i(c1) = c4")
    assert rendered(aug.inverse_table["f"]) == pairs(
        "i(1) = 1", "i(c2) = a", "i(c3) = b", "i(c4) = c1",
        "f(a,c2) = 1", "f(c2,a) = 1", "f(b,c3) = 1", "f(c3,b) = 1",
        "f(c1,c4) = 1", "f(c4,c1) = 1",
    )
    assert len(aug.unit_table["f"]) == 13
    assert aug.registry.constants == ("a", "b", "1", "c1", "c2", "c3", "c4")


def test_intro_additions():
    _, aug = augmented("intro")
    added = rendered(aug.named_inverses) | rendered(aug.inverse_table["f"])
    assert added == pairs(
        "i(1) = 1", "i(a) = c2", "i(c2) = a", "i(b) = c1",
        "f(a,c2) = 1", "f(c2,a) = 1", "f(c1,b) = 1", "f(b,c1) = 1",
    )


def test_two_groups_names_one_theory_at_a_time():
    _, aug = augmented("two_groups")
    assert rendered(aug.named_inverses) == pairs(
        "i_f(a) = c1", "i_f(b) = c2", "i_f(1_g) = c3",
        "i_g(a) = c4", "i_g(b) = c5", "i_g(1_f) = c6",
    )


def test_monoid_adds_only_unit_table():
    p, aug = augmented("monoid")
    assert len(aug.unit_table["f"]) == 9
    assert len(aug.s_e) == 3 + 9
    assert aug.inverse_table == {}


def test_semigroup_is_identity():
    p, aug = augmented("divergent")
    assert rendered(aug.s_e) == pairs("f(a,b,a) = f(b,a,b)")


def test_empty_group_problem():
    cfg = TheoryConfig.group("f", "i", "1")
    aug = augment([], ConstRegistry(["1"]), cfg)
    assert rendered(aug.s_e) == pairs("i(1) = 1", "f(1,1) = 1")


def test_monoid_table_ignores_free_symbol():
    cfg = TheoryConfig.monoid("f", "1", free=["g"])
    e = FlatEquation(app("g", const("a"), const("b")), app("g", const("b"), const("a")))
    aug = augment([e], ConstRegistry(["a", "b", "1"]), cfg)
    assert all(s.head != "g" for x in aug.units for s in x.sides)
    assert e in aug.s_e


def test_unit_table_shape():
    t = unit_table(["1"], GroupSig("f", "1", "i"))
    assert rendered(t) == pairs("f(1,1) = 1")


def named_elsewhere(aug, sig):
    # inverse names made for one theory are not themselves given inverses by the others
    return {e.rhs if e.lhs.args else e.lhs for e in aug.named_inverses if sig.inverse not in {x.head for x in e.sides}}


def check_invariants(p, aug):
    consts = [Term(c) for c in aug.registry.constants]
    ordering = aug.registry.ordering(p.ordering)
    for sig in aug.cfg.sigs:
        if sig.inverse is None:
            continue
        facts = {}
        for e in aug.s_e:
            for s, t in ((e.lhs, e.rhs), (e.rhs, e.lhs)):
                if s.head == sig.inverse and t.is_const:
                    facts.setdefault(s.args[0], set()).add(t)
        for c in consts:
            if c.head == sig.unit or c in named_elsewhere(aug, sig):
                continue
            assert c in facts or any(c in ds for ds in facts.values())
        for c, ds in facts.items():
            for d in ds:
                assert FlatEquation(app(sig.inverse, d), c) in aug.s_e
                assert FlatEquation(app(sig.op, c, d), Term(sig.unit)) in aug.s_e
                assert FlatEquation(app(sig.op, d, c), Term(sig.unit)) in aug.s_e
    for e in aug.s_e:
        assert term_compare(e.lhs, e.rhs, ordering, aug.cfg.assoc) is not Cmp.INCOMPARABLE


def test_structural_invariants_on_every_example():
    for name in golden.NAMES:
        p, aug = augmented(name)
        check_invariants(p, aug)


def test_augmentation_is_conservative_on_small_terms():
    # equal after augmentation implies equal before, for terms over the original symbols
    for name in ("intro", "group_running"):
        p, aug = augmented(name)
        funs = dict(p.signature.functions)
        funs.update({k: 1 for k in p.inverses})
        axioms = AxiomSet.from_config(p.cfg)
        before = oracle_closure(p.equations, axioms, p.signature.constants, funs, 6)
        consts = list(aug.registry.constants)
        after = oracle_closure([e.sides for e in aug.s_e], axioms, consts, funs, 4)
        small = [t for t in after.terms if t.size <= 4 and all(s.head not in aug.registry.fresh for s in t.subterms())]
        for s in small:
            for t in small:
                if after.class_of(s) == after.class_of(t):
                    assert before.class_of(s) == before.class_of(t), (s, t)
