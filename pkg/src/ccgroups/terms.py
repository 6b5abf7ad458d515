"""Ground terms, associative flattening and the ordering on flat terms.

Terms are hash-consed: two structurally equal terms are the same object,
so ``s is t`` is term equality and terms can be dict keys at no cost.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable, Iterator, NamedTuple


class Term:
    """A ground term ``head(args...)``; constants have empty ``args``."""

    __slots__ = ("head", "args", "size", "__weakref__")

    _table: dict = {}

    head: str
    args: tuple["Term", ...]
    size: int

    def __new__(cls, head: str, args: tuple["Term", ...] = ()):
        key = (head, args)
        t = cls._table.get(key)
        if t is None:
            t = object.__new__(cls)
            t.head = head
            t.args = args
            t.size = 1 + sum(a.size for a in args)
            cls._table[key] = t
        return t

    @property
    def is_const(self) -> bool:
        return not self.args

    def __repr__(self) -> str:
        return render(self)

    def __reduce__(self):
        return (Term, (self.head, self.args))

    def subterms(self) -> Iterator["Term"]:
        yield self
        for a in self.args:
            yield from a.subterms()


def const(name: str) -> Term:
    return Term(name)


def app(head: str, *args: Term) -> Term:
    return Term(head, tuple(args))


def render(t: Term) -> str:
    if not t.args:
        return t.head
    return f"{t.head}({','.join(render(a) for a in t.args)})"


def render_word(w: Iterable[Term]) -> str:
    """Concatenated letters, ``λ`` for the empty word."""
    s = "".join(c.head for c in w)
    return s or "λ"


class UnknownConstant(KeyError):
    """A constant that the ordering does not know; indicates a registry bug."""


# ---------------------------------------------------------------------------
# signature


@dataclass(frozen=True)
class Signature:
    """Symbols of a problem: constants, fixed-arity functions, associative symbols."""

    constants: tuple[str, ...] = ()
    functions: dict[str, int] = field(default_factory=dict)
    assoc: frozenset[str] = frozenset()

    def arity(self, name: str) -> int | None:
        """Fixed arity, ``None`` for associative symbols, ``0`` for constants."""
        if name in self.assoc:
            return None
        if name in self.functions:
            return self.functions[name]
        if name in self.constants:
            return 0
        raise KeyError(name)

    def knows(self, name: str) -> bool:
        return name in self.assoc or name in self.functions or name in self.constants

    def with_constants(self, names: Iterable[str]) -> "Signature":
        extra = tuple(n for n in names if n not in self.constants)
        return Signature(self.constants + extra, dict(self.functions), self.assoc)


# ---------------------------------------------------------------------------
# associative flattening


def assoc_flatten(t: Term, assoc: Collection[str]) -> Term:
    """A-normal form: no argument of an associative head has that same head."""
    if not t.args:
        return t
    args = [assoc_flatten(a, assoc) for a in t.args]
    if t.head in assoc:
        flat: list[Term] = []
        for a in args:
            if a.head == t.head and a.args:
                flat.extend(a.args)
            else:
                flat.append(a)
        return Term(t.head, tuple(flat))
    return Term(t.head, tuple(args))


def is_flat(t: Term, assoc: Collection[str]) -> bool:
    for s in t.subterms():
        if s.head in assoc and s.args:
            if len(s.args) < 2 or any(a.head == s.head and a.args for a in s.args):
                return False
    return True


def word(t: Term, f: str) -> tuple[Term, ...]:
    """Argument word of an ``f``-headed term, or the one-letter word ``t``."""
    if t.head == f and t.args:
        return t.args
    return (t,)


def fbar(f: str, w: tuple[Term, ...]) -> Term:
    """``f(w)`` for ``|w| >= 2``, the single letter otherwise."""
    if len(w) == 1:
        return w[0]
    if not w:
        raise ValueError("empty word has no term")
    return Term(f, w)


def plug(t: Term, k: int, s: Term, assoc: Collection[str]) -> Term:
    """Replace argument ``k`` of ``t`` by ``s``, splicing when associativity allows."""
    if t.head in assoc and s.head == t.head and s.args:
        args = t.args[:k] + s.args + t.args[k + 1 :]
    else:
        args = t.args[:k] + (s,) + t.args[k + 1 :]
    return Term(t.head, args)


def iter_rewrites(
    t: Term,
    root_steps: Callable[[Term], Iterable[tuple[Term, str]]],
    assoc: Collection[str],
) -> Iterator[tuple[Term, str]]:
    """Every one-step rewrite of ``t``, leftmost-outermost first.

    ``root_steps`` lists the rewrites at the root of a term as
    ``(result, tag)`` pairs.
    """
    yield from root_steps(t)
    for k, a in enumerate(t.args):
        for r, tag in iter_rewrites(a, root_steps, assoc):
            yield plug(t, k, r, assoc), tag


def find_subword(w: tuple[Term, ...], u: tuple[Term, ...], start: int = 0) -> int:
    n, m = len(w), len(u)
    first = u[0]
    for i in range(start, n - m + 1):
        if w[i] is first and w[i : i + m] == u:
            return i
    return -1


# ---------------------------------------------------------------------------
# ordering


class Cmp(enum.Enum):
    GREATER = ">"
    LESS = "<"
    EQUAL = "="
    INCOMPARABLE = "?"

    def flip(self) -> "Cmp":
        return {Cmp.GREATER: Cmp.LESS, Cmp.LESS: Cmp.GREATER}.get(self, self)


@dataclass(frozen=True)
class Ordering:
    """Total precedence on constants plus the derived weight function.

    ``precedence`` lists the original constants greatest first, units at
    the bottom.  ``fresh`` lists introduced constants in allocation order;
    each fresh constant is above every original one and earlier fresh
    constants are greater.
    """

    precedence: tuple[str, ...]
    fresh: tuple[str, ...] = ()
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rank = {}
        n = len(self.precedence)
        for pos, c in enumerate(self.precedence):
            rank[c] = n - pos
        m = len(self.fresh)
        for j, c in enumerate(self.fresh):
            if c in rank:
                raise ValueError(f"fresh constant {c} clashes with an original constant")
            rank[c] = n + (m - j)
        object.__setattr__(self, "_rank", rank)

    @classmethod
    def from_declaration(cls, constants: Iterable[str], units: Iterable[str] = ()) -> "Ordering":
        """Declaration order, earlier is greater; units below everything else.

        Units keep the order in which they are given (first is greatest).
        """
        units = list(units)
        rest = [c for c in constants if c not in units]
        return cls(tuple(rest) + tuple(units))

    def with_fresh(self, fresh: Iterable[str]) -> "Ordering":
        return Ordering(self.precedence, tuple(fresh))

    @property
    def constants(self) -> tuple[str, ...]:
        """All known constants, greatest first."""
        return tuple(self.fresh) + self.precedence

    def rank(self, c: str) -> int:
        try:
            return self._rank[c]
        except KeyError:
            raise UnknownConstant(c) from None

    def weight(self, c: str) -> int:
        # rank already starts at 1 for the minimum and is strictly monotone
        return self.rank(c)

    def const_compare(self, a: str, b: str) -> Cmp:
        ra, rb = self.rank(a), self.rank(b)
        if ra > rb:
            return Cmp.GREATER
        if ra < rb:
            return Cmp.LESS
        return Cmp.EQUAL


def llex_compare(u: Iterable[Term], v: Iterable[Term], ordering: Ordering) -> Cmp:
    """Length-lexicographic comparison of two words of constants."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        for c in u + v:
            ordering.rank(c.head)
        return Cmp.GREATER if len(u) > len(v) else Cmp.LESS
    for x, y in zip(u, v):
        if x is not y:
            return ordering.const_compare(x.head, y.head)
    return Cmp.EQUAL


def term_compare(s: Term, t: Term, ordering: Ordering, assoc: Collection[str]) -> Cmp:
    """The order on ground fully flat terms.

    Constants are compared by precedence, any applied term is above any
    constant, and two terms with the same associative head are compared
    length-lexicographically on their argument words.  Everything else is
    incomparable unless identical.
    """
    if s is t:
        return Cmp.EQUAL
    if s.is_const and t.is_const:
        return ordering.const_compare(s.head, t.head)
    if t.is_const:
        return Cmp.GREATER
    if s.is_const:
        return Cmp.LESS
    if (
        s.head == t.head
        and s.head in assoc
        and all(a.is_const for a in s.args)
        and all(a.is_const for a in t.args)
    ):
        return llex_compare(s.args, t.args, ordering)
    return Cmp.INCOMPARABLE


# ---------------------------------------------------------------------------
# complexity measure


class Measure(NamedTuple):
    """``(D, S, W)``; ``D`` is kept sorted descending so tuple order is the
    multiset extension of the lexicographic order on its pairs."""

    D: tuple[tuple[int, int], ...]
    S: int
    W: int


def depth(t: Term) -> int:
    if not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def measure(t: Term, ordering: Ordering, inverses: dict[str, str]) -> Measure:
    """Complexity measure of a flat ground term.

    ``inverses`` maps each interpreted inverse symbol to the associative
    symbol of its theory.
    """
    pairs: list[tuple[int, int]] = []
    weight = 0
    for s in t.subterms():
        if s.is_const:
            weight += ordering.weight(s.head)
        elif s.head in inverses:
            below = s.args[0]
            n = len(below.args) if below.head == inverses[s.head] and below.args else 0
            pairs.append((depth(s), n))
    pairs.sort(reverse=True)
    return Measure(tuple(pairs), t.size, weight)
