"""Brute-force bounded congruence closure, used as ground truth in tests.

Every flat term up to a size bound is enumerated.  Classes start as
singletons and are merged by the input equations, by ground instances of
the unit and inverse axioms whose sides are both in the universe, and by
congruence.  Associativity is built in: terms are kept flat, and an
associative term ``f(w)`` is congruent to any split ``f(f(w[:k]), f(w[k:]))``.

This module shares nothing with the rewriting pipeline except the term
representation.  It is sound but not complete: two terms that are equal
only through a proof leaving the universe are reported as not derived.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .terms import Term, assoc_flatten, fbar, word

DEFAULT_LIMIT = 400_000


class OracleResourceError(RuntimeError):
    """The requested universe is too large to enumerate."""


class Verdict(enum.Enum):
    EQUAL = "equal"
    NOT_DERIVED_AT_BOUND = "not derived at bound"


@dataclass(frozen=True)
class AxiomSet:
    """Interpreted symbols: ``(op, unit, inverse or None)`` per theory.

    With ``derived`` set, the group identities ``i(1) = 1``,
    ``i(i(x)) = x`` and ``i(f(x,y)) = f(i(y),i(x))`` are instantiated too,
    along with the one-step inverse of a whole word.
    They follow from the group axioms, so adding them keeps the closure
    sound while letting far smaller universes reach the same equalities.
    """

    theories: tuple[tuple[str, str, str | None], ...] = ()
    free_assoc: frozenset[str] = frozenset()
    derived: bool = True

    @classmethod
    def from_config(cls, cfg, derived: bool = True) -> "AxiomSet":
        # duck-typed so that this module never imports the theory code
        return cls(tuple((s.op, s.unit, s.inverse) for s in cfg.sigs), frozenset(cfg.free_assoc), derived)

    @property
    def assoc(self) -> frozenset[str]:
        return self.free_assoc | {op for op, _, _ in self.theories}


def _compositions(total: int, parts: int, smallest: int = 1):
    """Ordered tuples of ``parts`` positive sizes summing to ``total``."""
    if parts == 1:
        if total >= smallest:
            yield (total,)
        return
    for first in range(smallest, total - smallest * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, smallest):
            yield (first,) + rest


def _product(pools: Sequence[Sequence[Term]]):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for rest in _product(pools[1:]):
            yield (head,) + rest


def enumerate_terms(
    constants: Sequence[str],
    functions: dict[str, int],
    assoc: Iterable[str],
    bound: int,
    limit: int = DEFAULT_LIMIT,
) -> list[Term]:
    """All flat terms of size at most ``bound``, smallest first."""
    assoc = sorted(set(assoc))
    by_size: dict[int, list[Term]] = {1: [Term(c) for c in constants]}
    count = len(by_size[1])
    for size in range(2, bound + 1):
        layer: list[Term] = []
        for g, n in functions.items():
            for sizes in _compositions(size - 1, n):
                for args in _product([by_size.get(k, []) for k in sizes]):
                    layer.append(Term(g, args))
        for f in assoc:
            for n in range(2, size):
                for sizes in _compositions(size - 1, n):
                    pools = [[t for t in by_size.get(k, []) if t.head != f or not t.args] for k in sizes]
                    for args in _product(pools):
                        layer.append(Term(f, args))
        count += len(layer)
        if count > limit:
            raise OracleResourceError(
                f"more than {limit} terms at size {size}; lower the bound or shrink the signature"
            )
        by_size[size] = layer
    return [t for k in sorted(by_size) for t in by_size[k]]


def _closure(terms: Iterable[Term], assoc: frozenset[str]) -> set[Term]:
    """Subterms and associative subwords of ``terms``."""
    out: set[Term] = set()
    todo = list(terms)
    while todo:
        t = todo.pop()
        if t in out:
            continue
        out.add(t)
        todo.extend(t.args)
        if t.head in assoc and t.args:
            w = t.args
            for i in range(len(w)):
                for j in range(i + 2, len(w) + 1):
                    if j - i < len(w):
                        todo.append(fbar(t.head, w[i:j]))
    return out


class BoundedUniverse:
    """A partition of finitely many flat terms, closed under the axioms inside it."""

    def __init__(self, terms: Iterable[Term], bound: int):
        self.terms: list[Term] = list(dict.fromkeys(terms))
        self.index = {t: k for k, t in enumerate(self.terms)}
        self.parent = list(range(len(self.terms)))
        self.bound = bound

    def __contains__(self, t: Term) -> bool:
        return t in self.index

    def __len__(self) -> int:
        return len(self.terms)

    def find(self, k: int) -> int:
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def union(self, s: int, t: int) -> bool:
        a, b = self.find(s), self.find(t)
        if a == b:
            return False
        if a > b:
            a, b = b, a
        self.parent[b] = a
        return True

    def merge_terms(self, s: Term, t: Term) -> bool:
        if s in self.index and t in self.index:
            return self.union(self.index[s], self.index[t])
        return False

    def class_of(self, t: Term) -> int:
        return self.find(self.index[t])

    def classes(self) -> list[list[Term]]:
        groups: dict[int, list[Term]] = {}
        for k, t in enumerate(self.terms):
            groups.setdefault(self.find(k), []).append(t)
        return list(groups.values())


def _axiom_instances(t: Term, axioms: AxiomSet) -> Iterable[Term]:
    """Terms that equal ``t`` by one ground axiom instance at the root."""
    for op, unit, inv in axioms.theories:
        if axioms.derived and inv is not None and t.head == inv:
            x = t.args[0]
            if x.head == unit and not x.args:
                yield x
            elif x.head == inv:
                yield x.args[0]
            elif x.head == op and x.args:
                w = x.args
                for k in range(1, len(w)):
                    yield Term(op, (Term(inv, (fbar(op, w[k:]),)), Term(inv, (fbar(op, w[:k]),))))
                # the whole word at once, cancelling double inverses on the way
                yield Term(op, tuple(a.args[0] if a.head == inv else Term(inv, (a,)) for a in reversed(w)))
            continue
        if t.head != op or not t.args:
            continue
        w = t.args
        one = Term(unit)
        for k, a in enumerate(w):
            if a is one:
                yield fbar(op, w[:k] + w[k + 1 :])
        if inv is None:
            continue
        for k, a in enumerate(w):
            if a.head != inv:
                continue
            v = word(a.args[0], op)
            n = len(v)
            if w[k + 1 : k + 1 + n] == v:
                rest = w[:k] + w[k + 1 + n :]
                yield fbar(op, rest) if rest else one
            if k >= n and w[k - n : k] == v:
                rest = w[: k - n] + w[k + 1 :]
                yield fbar(op, rest) if rest else one


def oracle_closure(
    equations: Iterable[tuple[Term, Term]],
    axioms: AxiomSet,
    constants: Sequence[str],
    functions: dict[str, int],
    size_bound: int,
    extra_terms: Iterable[Term] = (),
    limit: int = DEFAULT_LIMIT,
) -> BoundedUniverse:
    """Bounded closure of ``equations`` modulo the axioms.

    ``functions`` lists every fixed-arity symbol, inverse symbols included.
    """
    assoc = axioms.assoc
    eqs = [(assoc_flatten(s, assoc), assoc_flatten(t, assoc)) for s, t in equations]
    extra = [assoc_flatten(t, assoc) for t in extra_terms]
    base = enumerate_terms(constants, functions, assoc, size_bound, limit)
    seeds = [x for e in eqs for x in e] + extra
    uni = BoundedUniverse(base + sorted(_closure(seeds, assoc) - set(base), key=lambda t: t.size), size_bound)

    index = uni.index
    for s, t in eqs:
        uni.union(index[s], index[t])
    for t in uni.terms:
        for s in _axiom_instances(t, axioms):
            if s in index:
                uni.union(index[t], index[s])

    # congruence keys: one per argument tuple, or one per split of a word
    keyed: list[tuple[int, list[tuple]]] = []
    for k, t in enumerate(uni.terms):
        if not t.args:
            continue
        if t.head in assoc:
            w = t.args
            ks = [(t.head, index[fbar(t.head, w[:j])], index[fbar(t.head, w[j:])]) for j in range(1, len(w))]
        else:
            ks = [(t.head,) + tuple(index[a] for a in t.args)]
        keyed.append((k, ks))

    find = uni.find
    changed = True
    while changed:
        changed = False
        table: dict[tuple, int] = {}
        for k, ks in keyed:
            for key in ks:
                canon = (key[0],) + tuple(find(x) for x in key[1:])
                other = table.setdefault(canon, k)
                if other != k and uni.union(other, k):
                    changed = True
    return uni


def oracle_decide(s: Term, t: Term, universe: BoundedUniverse, assoc: Iterable[str] = ()) -> Verdict:
    s, t = assoc_flatten(s, assoc), assoc_flatten(t, assoc)
    for x in (s, t):
        if x not in universe:
            raise KeyError(f"{x!r} is outside the universe")
    if universe.class_of(s) == universe.class_of(t):
        return Verdict.EQUAL
    return Verdict.NOT_DERIVED_AT_BOUND
