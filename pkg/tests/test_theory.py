import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccgroups.terms import Term, app, assoc_flatten, const, iter_rewrites
from ccgroups.theory import (
    ConfigError,
    GroupSig,
    Mode,
    TheoryConfig,
    theory_normalize,
    theory_root_steps,
    theory_rules_ground_step,
)

a, b, one = const("a"), const("b"), const("1")
G = TheoryConfig.group("f", "i", "1")
M = TheoryConfig.monoid("f", "1")


def f(*xs):
    return app("f", *xs)


def i(x):
    return app("i", x)


def h(x):
    return app("h", x)


def test_cancellation_inside_a_word():
    assert theory_normalize(f(h(a), i(h(a)), one), G) is one


def test_inverse_of_unit():
    assert theory_normalize(i(one), G) is one


def test_inverse_distributes_over_a_word():
    assert theory_normalize(i(f(a, b)), G) is f(i(b), i(a))


def test_semigroup_mode_is_identity():
    t = f(a, one, b)
    assert theory_normalize(t, TheoryConfig.semigroup(["f"])) is t


def test_monoid_only_deletes_units():
    assert theory_normalize(f(a, one, b, one), M) is f(a, b)
    assert theory_normalize(f(one, one), M) is one


def test_single_step_unit_deletion():
    c4 = const("c4")
    assert theory_rules_ground_step(f(b, c4, one), G) == (f(b, c4), "f(x,1)->x")


def test_single_step_double_inverse():
    inner = f(h(a), i(b), a)
    assert theory_rules_ground_step(i(i(inner)), G) == (inner, "i(i(x))->x")


def test_unit_is_normal():
    assert theory_rules_ground_step(one, G) is None


def test_config_rejects_shared_symbols():
    with pytest.raises(ConfigError):
        TheoryConfig.multigroup([GroupSig("f", "1", "i"), GroupSig("g", "1", "j")])


def test_config_modes():
    assert G.mode is Mode.GROUP and G.assoc == {"f"} and G.inverses == {"i": "f"}
    assert M.units == ("1",)
    mg = TheoryConfig.multigroup([GroupSig("f", "1f", "if"), GroupSig("g", "1g", "ig")], free=["k"])
    assert mg.assoc == {"f", "g", "k"}
    assert mg.sig_of_inverse("ig").op == "g"


MG = TheoryConfig.multigroup([GroupSig("f", "1f", "if"), GroupSig("g", "1g", "ig")])
F_ONLY = TheoryConfig.group("f", "if", "1f", free=["g"])
G_ONLY = TheoryConfig.group("g", "ig", "1g", free=["f"])


def random_term(rng, syms, leaves, depth):
    if depth == 0 or rng.random() < 0.3:
        return Term(rng.choice(leaves))
    kind, name = rng.choice(syms)
    if kind == "un":
        return app(name, random_term(rng, syms, leaves, depth - 1))
    n = rng.randint(2, 4)
    return app(name, *(random_term(rng, syms, leaves, depth - 1) for _ in range(n)))


GROUP_SYMS = [("as", "f"), ("un", "i"), ("un", "h")]
MULTI_SYMS = [("as", "f"), ("as", "g"), ("un", "if"), ("un", "ig"), ("un", "h")]


def random_normal_form(t, cfg, rng):
    while True:
        steps = list(iter_rewrites(t, lambda s: theory_root_steps(s, cfg), cfg.assoc))
        if not steps:
            return t
        t = rng.choice(steps)[0]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_normalization_is_strategy_independent(seed):
    rng = random.Random(seed)
    t = assoc_flatten(random_term(rng, GROUP_SYMS, ["a", "b", "1"], 4), G.assoc)
    nf = theory_normalize(t, G)
    assert random_normal_form(t, G, rng) is nf
    assert theory_normalize(nf, G) is nf
    assert theory_rules_ground_step(nf, G) is None


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_two_theories_normalize_modularly(seed):
    rng = random.Random(seed)
    t = assoc_flatten(random_term(rng, MULTI_SYMS, ["a", "1f", "1g"], 4), MG.assoc)
    expected = t
    while True:
        nxt = theory_normalize(theory_normalize(expected, F_ONLY), G_ONLY)
        if nxt is expected:
            break
        expected = nxt
    assert theory_normalize(t, MG) is expected
