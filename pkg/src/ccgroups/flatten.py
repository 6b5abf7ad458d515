"""Phase one: turn ground equations into constant, D-flat and A-flat equations."""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

from .terms import Ordering, Term, assoc_flatten, render
from .theory import Mode, TheoryConfig, theory_normalize


class Kind(enum.Enum):
    CONST = "C"
    DFLAT = "D"
    AFLAT = "A"


class FlatEquation:
    """An unordered ground flat equation ``lhs ≈ rhs``."""

    __slots__ = ("lhs", "rhs", "_key")

    def __init__(self, lhs: Term, rhs: Term):
        self.lhs = lhs
        self.rhs = rhs
        self._key = frozenset((lhs, rhs))

    def __eq__(self, other):
        return isinstance(other, FlatEquation) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"{render(self.lhs)} ≈ {render(self.rhs)}"

    @property
    def sides(self) -> tuple[Term, Term]:
        return self.lhs, self.rhs

    @property
    def is_trivial(self) -> bool:
        return self.lhs is self.rhs

    def kind(self, assoc: Iterable[str]) -> Kind:
        """Shape of the equation; raises ``ValueError`` if it is not flat."""
        s, t = self.lhs, self.rhs
        for side in (s, t):
            if any(a.args for a in side.args):
                raise ValueError(f"not flat: {self}")
        if s.is_const and t.is_const:
            return Kind.CONST
        if s.is_const or t.is_const:
            return Kind.DFLAT
        if s.head == t.head and s.head in set(assoc):
            return Kind.AFLAT
        raise ValueError(f"not flat: {self}")


class RegistryFrozen(RuntimeError):
    """A fresh constant was requested after augmentation finished."""


class ConstRegistry:
    """Original constants, fresh constants in allocation order, and subterm names."""

    def __init__(self, originals: Sequence[str], prefix: str = "c"):
        self.originals = tuple(originals)
        self.fresh: list[str] = []
        self.naming: dict[Term, Term] = {}
        self.prefix = prefix
        self.frozen = False
        self._next = 1
        self._taken = set(originals)

    def allocate(self) -> Term:
        if self.frozen:
            raise RegistryFrozen("no new constants after augmentation")
        while True:
            name = f"{self.prefix}{self._next}"
            self._next += 1
            if name not in self._taken:
                break
        self._taken.add(name)
        self.fresh.append(name)
        return Term(name)

    def name(self, t: Term) -> Term:
        """The constant naming ``t``, allocated on first use."""
        c = self.naming.get(t)
        if c is None:
            c = self.allocate()
            self.naming[t] = c
        return c

    def freeze(self) -> None:
        self.frozen = True

    @property
    def constants(self) -> tuple[str, ...]:
        return self.originals + tuple(self.fresh)

    def ordering(self, base: Ordering) -> Ordering:
        return base.with_fresh(self.fresh)


def prepare(t: Term, cfg: TheoryConfig) -> Term:
    """Flatten and normalize by the theory rules."""
    t = assoc_flatten(t, cfg.assoc)
    if cfg.mode is not Mode.SEMIGROUP:
        t = theory_normalize(t, cfg)
    return t


def phase1(
    equations: Iterable[tuple[Term, Term]],
    cfg: TheoryConfig,
    originals: Sequence[str],
    registry: ConstRegistry | None = None,
) -> tuple[list[FlatEquation], ConstRegistry]:
    """Flatten, normalize and name subterms.

    Proper subterms are named bottom-up, left to right, equation by
    equation; a subterm seen twice gets one name.  Naming equations come
    first in allocation order, then the top-level equations in input order.
    """
    reg = registry if registry is not None else ConstRegistry(originals)
    assoc = cfg.assoc
    defs: list[FlatEquation] = []

    def shallow(t: Term) -> Term:
        if not t.args:
            return t
        return Term(t.head, tuple(const_for(a) for a in t.args))

    def const_for(t: Term) -> Term:
        if not t.args:
            return t
        s = shallow(t)
        known = s in reg.naming
        c = reg.name(s)
        if not known:
            defs.append(FlatEquation(s, c))
        return c

    tops: list[FlatEquation] = []
    for lhs, rhs in equations:
        s, t = prepare(lhs, cfg), prepare(rhs, cfg)
        if s is t:
            continue
        s, t = shallow(s), shallow(t)
        if s.args and t.args and not (s.head == t.head and s.head in assoc):
            t = const_for(t)
        tops.append(FlatEquation(s, t))

    out: list[FlatEquation] = []
    seen: set[FlatEquation] = set()
    for eq in defs + tops:
        if eq.is_trivial or eq in seen:
            continue
        seen.add(eq)
        out.append(eq)
    return out, reg
