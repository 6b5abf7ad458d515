"""Theory configuration and normalization by the fixed group and monoid systems.

The rules are applied directly on flat terms:

* ``i(1) -> 1``, ``i(i(x)) -> x``
* ``i(f(t1..tn)) -> f(i(tn)..i(t1))`` in one step
* deletion of a unit letter anywhere inside an ``f`` word
* cancellation of an adjacent ``t, i(t)`` or ``i(t), t`` pair inside an ``f`` word

Monoid theories only use unit deletion; semigroups have no rules at all.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from .terms import Term, fbar, iter_rewrites, plug


class ConfigError(ValueError):
    """Inconsistent theory declarations."""


class Mode(enum.Enum):
    SEMIGROUP = "semigroup"
    MONOID = "monoid"
    GROUP = "group"
    MULTIGROUP = "multigroup"


@dataclass(frozen=True)
class GroupSig:
    """Interpreted symbols of one theory; ``inverse`` is ``None`` for a monoid."""

    op: str
    unit: str
    inverse: str | None = None

    def symbols(self) -> set[str]:
        return {self.op, self.unit} | ({self.inverse} if self.inverse else set())


@dataclass(frozen=True)
class TheoryConfig:
    mode: Mode
    sigs: tuple[GroupSig, ...] = ()
    free_assoc: frozenset[str] = frozenset()
    _by_op: dict = field(init=False, repr=False, compare=False)
    _by_inv: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m, sigs = self.mode, self.sigs
        if m is Mode.SEMIGROUP and sigs:
            raise ConfigError("semigroup mode takes no interpreted signature")
        if m is Mode.MONOID and (len(sigs) != 1 or sigs[0].inverse is not None):
            raise ConfigError("monoid mode needs exactly one signature without an inverse")
        if m is Mode.GROUP and (len(sigs) != 1 or sigs[0].inverse is None):
            raise ConfigError("group mode needs exactly one signature with an inverse")
        if m is Mode.MULTIGROUP:
            if not sigs or any(s.inverse is None for s in sigs):
                raise ConfigError("multigroup mode needs group signatures with inverses")
        seen: set[str] = set()
        for s in sigs:
            if s.op == s.unit or s.op == s.inverse or s.unit == s.inverse:
                raise ConfigError(f"signature {s} reuses a symbol")
            clash = seen & s.symbols()
            if clash:
                raise ConfigError(f"signatures share symbols: {sorted(clash)}")
            seen |= s.symbols()
        clash = seen & self.free_assoc
        if clash:
            raise ConfigError(f"free associative symbol also interpreted: {sorted(clash)}")
        object.__setattr__(self, "_by_op", {s.op: s for s in sigs})
        object.__setattr__(self, "_by_inv", {s.inverse: s for s in sigs if s.inverse})

    @classmethod
    def semigroup(cls, assoc=()) -> "TheoryConfig":
        return cls(Mode.SEMIGROUP, (), frozenset(assoc))

    @classmethod
    def monoid(cls, op: str, unit: str, free=()) -> "TheoryConfig":
        return cls(Mode.MONOID, (GroupSig(op, unit),), frozenset(free))

    @classmethod
    def group(cls, op: str, inverse: str, unit: str, free=()) -> "TheoryConfig":
        return cls(Mode.GROUP, (GroupSig(op, unit, inverse),), frozenset(free))

    @classmethod
    def multigroup(cls, sigs, free=()) -> "TheoryConfig":
        return cls(Mode.MULTIGROUP, tuple(sigs), frozenset(free))

    @property
    def assoc(self) -> frozenset[str]:
        """Every associative symbol, interpreted or not."""
        return self.free_assoc | {s.op for s in self.sigs}

    @property
    def units(self) -> tuple[str, ...]:
        return tuple(s.unit for s in self.sigs)

    @property
    def inverses(self) -> dict[str, str]:
        """Inverse symbol -> associative symbol of its theory."""
        return {s.inverse: s.op for s in self.sigs if s.inverse}

    def sig_of_op(self, op: str) -> GroupSig | None:
        return self._by_op.get(op)

    def sig_of_inverse(self, inv: str) -> GroupSig | None:
        return self._by_inv.get(inv)


# ---------------------------------------------------------------------------
# root steps


def _collapse(sig: GroupSig, w: tuple[Term, ...]) -> Term:
    if not w:
        return Term(sig.unit)
    return fbar(sig.op, w)


def theory_root_steps(t: Term, cfg: TheoryConfig) -> Iterator[tuple[Term, str]]:
    """All theory rewrites at the root of ``t``, left to right."""
    if not t.args:
        return
    sig = cfg.sig_of_inverse(t.head)
    if sig is not None:
        x = t.args[0]
        if x.is_const and x.head == sig.unit:
            yield Term(sig.unit), "i(1)->1"
        elif x.head == t.head:
            yield x.args[0], "i(i(x))->x"
        elif x.head == sig.op and x.args:
            inv = tuple(Term(t.head, (a,)) for a in reversed(x.args))
            yield Term(sig.op, inv), "i(f(x,y))->f(i(y),i(x))"
        return
    sig = cfg.sig_of_op(t.head)
    if sig is None:
        return
    w = t.args
    unit = Term(sig.unit)
    for k, a in enumerate(w):
        if a is unit:
            tag = "f(x,1)->x" if k > 0 else "f(1,x)->x"
            yield _collapse(sig, w[:k] + w[k + 1 :]), tag
        if sig.inverse is not None and k + 1 < len(w):
            b = w[k + 1]
            if b.head == sig.inverse and b.args[0] is a:
                yield _collapse(sig, w[:k] + w[k + 2 :]), "f(x,i(x))->1"
            elif a.head == sig.inverse and a.args[0] is b:
                yield _collapse(sig, w[:k] + w[k + 2 :]), "f(i(x),x)->1"


def theory_rules_ground_step(t: Term, cfg: TheoryConfig) -> tuple[Term, str] | None:
    """One leftmost-outermost theory step, or ``None`` when ``t`` is normal."""
    for step in iter_rewrites(t, lambda s: theory_root_steps(s, cfg), cfg.assoc):
        return step
    return None


class TheoryNormalizer:
    """Memoizing bottom-up normalizer for one configuration."""

    def __init__(self, cfg: TheoryConfig):
        self.cfg = cfg
        self.assoc = cfg.assoc
        self.memo: dict[Term, Term] = {}

    def __call__(self, t: Term) -> Term:
        memo = self.memo
        r = memo.get(t)
        if r is not None:
            return r
        if t.args:
            s = t
            for k in range(len(t.args) - 1, -1, -1):
                s = plug(s, k, self(t.args[k]), self.assoc)
            r = s
            for r2, _ in theory_root_steps(s, self.cfg):
                r = self(r2)
                break
        else:
            r = t
        memo[t] = r
        return r


def theory_normalize(t: Term, cfg: TheoryConfig) -> Term:
    """Unique normal form of a flat term under the active theory rules."""
    if cfg.mode is Mode.SEMIGROUP:
        return t
    return TheoryNormalizer(cfg)(t)
