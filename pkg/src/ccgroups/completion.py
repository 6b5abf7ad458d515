"""Phase three: ground completion modulo associativity.

A given-clause loop.  Passive equations wait in a heap ordered by size and
then age, which is fair because there are only finitely many flat terms of
each size over a finite constant set.  The selected equation is normalized
by the active rules (simplify, collapse, compose), deleted if trivial, and
otherwise oriented and added.  Active rules that the new rule can reduce are
then inter-reduced, and word overlaps with it are queued (deduce).
"""

from __future__ import annotations

import enum
import heapq
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Collection, Iterable, Iterator

from .augment import AugmentedProblem
from .flatten import FlatEquation
from .terms import Cmp, Ordering, Term, fbar, iter_rewrites, plug, render, term_compare, word

DEFAULT_FUEL = 100_000

INFERENCES = ("DEDUCE", "SIMPLIFY", "COLLAPSE", "COMPOSE", "DELETE", "ORIENT")


class OrientationError(RuntimeError):
    """An equation whose sides the ordering cannot compare."""


class Status(enum.Enum):
    COMPLETED = "completed"
    DIVERGED = "diverged"


@dataclass(eq=False)
class Rule:
    lhs: Term
    rhs: Term
    id: int
    origin: str = "input"

    def __repr__(self):
        return f"{render(self.lhs)} -> {render(self.rhs)}"

    @property
    def text(self) -> str:
        return repr(self)


class RuleIndex:
    """Active rules indexed by the shape of their left-hand side.

    Constant rules and non-associative rules are looked up by exact left
    side.  Associative rules are bucketed by head and first letter so that
    subword matching only tries plausible rules.
    """

    def __init__(self, assoc: Collection[str], rules: Iterable[Rule] = ()):
        self.assoc = frozenset(assoc)
        self.const: dict[Term, Rule] = {}
        self.dflat: dict[Term, Rule] = {}
        self.words: dict[str, dict[Term, list[Rule]]] = {}
        self.by_id: dict[int, Rule] = {}
        for r in rules:
            self.add(r)

    def __len__(self):
        return len(self.by_id)

    def __iter__(self) -> Iterator[Rule]:
        return iter(sorted(self.by_id.values(), key=lambda r: r.id))

    def is_assoc_rule(self, r: Rule) -> bool:
        return bool(r.lhs.args) and r.lhs.head in self.assoc

    def add(self, r: Rule) -> None:
        self.by_id[r.id] = r
        if not r.lhs.args:
            self.const[r.lhs] = r
        elif r.lhs.head in self.assoc:
            bucket = self.words.setdefault(r.lhs.head, {})
            bucket.setdefault(r.lhs.args[0], []).append(r)
        else:
            self.dflat[r.lhs] = r

    def remove(self, r: Rule) -> None:
        del self.by_id[r.id]
        if not r.lhs.args:
            del self.const[r.lhs]
        elif r.lhs.head in self.assoc:
            self.words[r.lhs.head][r.lhs.args[0]].remove(r)
        else:
            del self.dflat[r.lhs]

    def assoc_rules(self, head: str) -> list[Rule]:
        bucket = self.words.get(head, {})
        return sorted((r for rs in bucket.values() for r in rs), key=lambda r: r.id)

    def root_steps(self, t: Term) -> Iterator[tuple[Term, Rule]]:
        """Rewrites at the root of ``t``; word matches scan left to right."""
        if not t.args:
            r = self.const.get(t)
            if r is not None:
                yield r.rhs, r
            return
        r = self.dflat.get(t)
        if r is not None:
            yield r.rhs, r
        bucket = self.words.get(t.head)
        if not bucket:
            return
        w = t.args
        f = t.head
        for i, a in enumerate(w):
            for r in bucket.get(a, ()):
                u = r.lhs.args
                if w[i : i + len(u)] == u:
                    yield fbar(f, w[:i] + word(r.rhs, f) + w[i + len(u) :]), r

    def steps(self, t: Term) -> Iterator[tuple[Term, Rule]]:
        """Every one-step rewrite of ``t``, leftmost-outermost first."""
        return iter_rewrites(t, self.root_steps, self.assoc)

    def first_step(self, t: Term) -> tuple[Term, Rule] | None:
        return next(self.steps(t), None)

    def reducible(self, t: Term) -> bool:
        if not t.args:
            return t in self.const
        if next(self.root_steps(t), None) is not None:
            return True
        const = self.const
        for a in t.args:
            if a.args:
                if self.reducible(a):
                    return True
            elif a in const:
                return True
        return False

    def normalize(self, t: Term) -> Term:
        while True:
            step = self.first_step(t)
            if step is None:
                return t
            t = step[0]


def _inference_for(t: Term, r: Rule, assoc: Collection[str], at_root: bool) -> str:
    if r.lhs.args and r.lhs.head in assoc:
        return "SIMPLIFY"
    if at_root and t.is_const:
        return "COMPOSE"
    return "COLLAPSE"


# ---------------------------------------------------------------------------
# critical pairs


def overlaps(r1: Rule, r2: Rule) -> list[tuple[Term, Term]]:
    """Proper overlaps: a suffix of ``lhs(r1)`` equals a prefix of ``lhs(r2)``.

    For ``f(u1 u2) -> s`` and ``f(u2 u3) -> t`` with all three parts
    nonempty this gives ``f(u1 t) ≈ f(s u3)``.
    """
    f = r1.lhs.head
    if r2.lhs.head != f or not r1.lhs.args or not r2.lhs.args:
        return []
    x, y = r1.lhs.args, r2.lhs.args
    out = []
    for k in range(1, min(len(x), len(y))):
        if x[-k:] == y[:k]:
            left = fbar(f, x[:-k] + word(r2.rhs, f))
            right = fbar(f, word(r1.rhs, f) + y[k:])
            out.append((left, right))
    return out


def containments(r1: Rule, r2: Rule, ordering: Ordering, assoc: Collection[str]) -> list[tuple[Term, Term]]:
    """``lhs(r2)`` occurs as a subword of ``lhs(r1)``."""
    f = r1.lhs.head
    if r1 is r2 or r2.lhs.head != f or f not in assoc or not r1.lhs.args or not r2.lhs.args:
        return []
    x, y = r1.lhs.args, r2.lhs.args
    out = []
    for i in range(len(x) - len(y) + 1):
        if x[i : i + len(y)] == y:
            if len(x) == len(y) and term_compare(r1.rhs, r2.rhs, ordering, assoc) is not Cmp.GREATER:
                continue
            out.append((fbar(f, x[:i] + word(r2.rhs, f) + x[i + len(y) :]), r1.rhs))
    return out


def constant_pairs(r1: Rule, r2: Rule, assoc: Collection[str]) -> list[tuple[Term, Term]]:
    """A non-associative rule ``u -> d`` rewriting inside ``lhs(r1)``."""
    u = r2.lhs
    if r1 is r2 or (u.args and u.head in assoc) or not r2.rhs.is_const:
        return []
    out = []
    l = r1.lhs
    for k, a in enumerate(l.args):
        if a is u:
            out.append((plug(l, k, r2.rhs, assoc), r1.rhs))
    return out


def deduce(r1: Rule, r2: Rule, ordering: Ordering, assoc: Collection[str]) -> list[FlatEquation]:
    """Overlap and containment conclusions between two rules, both orders."""
    out = overlaps(r1, r2) + (overlaps(r2, r1) if r1 is not r2 else [])
    out += containments(r1, r2, ordering, assoc) + containments(r2, r1, ordering, assoc)
    return [FlatEquation(s, t) for s, t in out]


def critical_pairs(rules: Iterable[Rule], ordering: Ordering, assoc: Collection[str]) -> list[tuple[Term, Term]]:
    """All critical pairs of a rule set: overlaps, containments, constant pairs."""
    rules = list(rules)
    out = []
    for r1 in rules:
        for r2 in rules:
            out += overlaps(r1, r2)
            out += containments(r1, r2, ordering, assoc)
            out += constant_pairs(r1, r2, assoc)
    return out


def unjoinable_pairs(rules: Iterable[Rule], ordering: Ordering, assoc: Collection[str]) -> list[tuple[Term, Term]]:
    rules = list(rules)
    idx = RuleIndex(assoc, rules)
    return [(s, t) for s, t in critical_pairs(rules, ordering, assoc) if idx.normalize(s) is not idx.normalize(t)]


def reducedness_violations(rules: Iterable[Rule], assoc: Collection[str]) -> list[str]:
    """Rules whose right side or a proper part of whose left side is reducible."""
    rules = list(rules)
    problems = []
    everyone = RuleIndex(assoc, rules)
    for r in rules:
        others = RuleIndex(assoc, [q for q in rules if q is not r])
        if everyone.reducible(r.rhs):
            problems.append(f"right side of {r} is reducible")
        if others.reducible(r.lhs):
            problems.append(f"left side of {r} is reducible by another rule")
        for a in r.lhs.args:
            if everyone.reducible(a):
                problems.append(f"argument {render(a)} of {r} is reducible")
    return problems


def contract(eq: FlatEquation, active: RuleIndex) -> FlatEquation | None:
    """Normalize both sides of ``eq``; ``None`` means the result was trivial."""
    s, t = active.normalize(eq.lhs), active.normalize(eq.rhs)
    if s is t:
        return None
    return FlatEquation(s, t)


# ---------------------------------------------------------------------------
# the loop


@dataclass
class CompletionResult:
    status: Status
    rules: list[Rule]
    steps_used: int
    stats: Counter
    trace: list[str] = field(default_factory=list)
    generated: list[Rule] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.status is Status.COMPLETED


def _is_unit_instance(r: Rule, units: dict[str, str]) -> bool:
    l = r.lhs
    one = units.get(l.head)
    if one is None or len(l.args) != 2:
        return False
    a, b = l.args
    return (b.head == one and a is r.rhs) or (a.head == one and b is r.rhs)


class _Completion:
    def __init__(
        self,
        problem: AugmentedProblem,
        ordering: Ordering,
        fuel: int,
        skip_unit_deduce: bool,
        trace: bool,
        max_rule_size: int | None = None,
    ):
        self.ordering = ordering
        self.max_rule_size = max_rule_size
        self.assoc = problem.cfg.assoc
        self.units = {s.op: s.unit for s in problem.cfg.sigs} if skip_unit_deduce else {}
        self.active = RuleIndex(self.assoc)
        self.passive: list = []
        self.fuel = fuel
        self.initial_fuel = fuel
        self.ids = itertools.count(1)
        self.age = itertools.count()
        self.stats: Counter = Counter()
        self.keep_trace = trace
        self.trace: list[str] = []
        self.steps = 0
        self.generated: list[Rule] = []

    def log(self, inference: str, premises: Iterable[int], conclusion: str) -> None:
        self.stats[inference] += 1
        if inference != "ORIENT":
            self.steps += 1
        if self.keep_trace:
            prem = ",".join(str(p) for p in premises)
            self.trace.append(f"{self.steps} {inference} [{prem}] {conclusion}")

    def push(self, s: Term, t: Term, origin: str) -> int:
        eid = next(self.ids)
        heapq.heappush(self.passive, (s.size + t.size, next(self.age), eid, s, t, origin))
        return eid

    def norm(self, t: Term, other: Term, eid: int) -> Term:
        while True:
            root = next(self.active.root_steps(t), None)
            if root is not None:
                t2, r = root
                inf = _inference_for(t, r, self.assoc, True)
            else:
                step = None
                for k, a in enumerate(t.args):
                    for a2, r in self.active.steps(a):
                        step = plug(t, k, a2, self.assoc), r
                        break
                    if step:
                        break
                if step is None:
                    return t
                t2, r = step
                inf = "COLLAPSE" if not (r.lhs.args and r.lhs.head in self.assoc) else "SIMPLIFY"
            self.fuel -= 1
            self.log(inf, (eid, r.id), f"{render(t2)} ≈ {render(other)}")
            t = t2

    def orient(self, s: Term, t: Term) -> tuple[Term, Term]:
        c = term_compare(s, t, self.ordering, self.assoc)
        if c is Cmp.GREATER:
            return s, t
        if c is Cmp.LESS:
            return t, s
        raise OrientationError(f"cannot orient {render(s)} ≈ {render(t)}")

    def add_rule(self, rule: Rule) -> None:
        single = RuleIndex(self.assoc, [rule])
        for old in list(self.active):
            if single.reducible(old.lhs):
                self.active.remove(old)
                self.push(old.lhs, old.rhs, f"rule {old.id} reduced by {rule.id}")
        self.active.add(rule)
        for old in list(self.active):
            # the active set was inter-reduced before, so only the new rule can apply
            if old is rule or not single.reducible(old.rhs):
                continue
            if self.active.reducible(old.rhs):
                rhs = old.rhs
                while True:
                    step = self.active.first_step(rhs)
                    if step is None:
                        break
                    rhs, r = step
                    self.fuel -= 1
                    inf = "SIMPLIFY" if self.active.is_assoc_rule(r) else "COMPOSE"
                    self.log(inf, (old.id, r.id), f"{render(old.lhs)} -> {render(rhs)}")
                old.rhs = rhs
        self.generated.append(Rule(rule.lhs, rule.rhs, rule.id, rule.origin))

    def deduce_with(self, rule: Rule) -> None:
        if not self.active.is_assoc_rule(rule):
            return
        if _is_unit_instance(rule, self.units):
            return
        for other in self.active.assoc_rules(rule.lhs.head):
            if _is_unit_instance(other, self.units):
                continue
            pairs = overlaps(rule, other)
            if other is not rule:
                pairs += overlaps(other, rule)
            for s, t in pairs:
                if s is t:
                    continue
                self.fuel -= 1
                self.push(s, t, f"overlap of {rule.id} and {other.id}")
                self.log("DEDUCE", (rule.id, other.id), f"{render(s)} ≈ {render(t)}")

    def run(self, equations: Iterable[FlatEquation]) -> CompletionResult:
        for e in equations:
            self.push(e.lhs, e.rhs, "input")
        while self.passive:
            if self.fuel <= 0:
                return self.result(Status.DIVERGED)
            _, _, eid, s, t, origin = heapq.heappop(self.passive)
            s = self.norm(s, t, eid)
            t = self.norm(t, s, eid)
            if s is t:
                self.fuel -= 1
                self.log("DELETE", (eid,), f"{render(s)} ≈ {render(t)}")
                continue
            lhs, rhs = self.orient(s, t)
            if self.max_rule_size is not None and lhs.size > self.max_rule_size:
                return self.result(Status.DIVERGED)
            rule = Rule(lhs, rhs, eid, origin)
            self.log("ORIENT", (eid,), repr(rule))
            self.add_rule(rule)
            self.deduce_with(rule)
        return self.result(Status.COMPLETED)

    def result(self, status: Status) -> CompletionResult:
        return CompletionResult(
            status,
            list(self.active),
            self.steps,
            self.stats,
            self.trace,
            self.generated,
        )


def complete(
    problem: AugmentedProblem,
    ordering: Ordering,
    fuel: int = DEFAULT_FUEL,
    skip_unit_deduce: bool = False,
    trace: bool = True,
    max_rule_size: int | None = None,
) -> CompletionResult:
    """Run completion on the augmented equations until saturation or out of fuel.

    One unit of fuel is spent per rewrite step, per deduced equation and
    per deleted equation.  With ``max_rule_size`` set, a rule whose left
    side grows beyond that many symbols also stops the run as diverged;
    growing words are the usual sign of a run that will not finish, and
    they make each further step slower.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    run = _Completion(problem, ordering, fuel, skip_unit_deduce, trace, max_rule_size)
    return run.run(problem.s_e)
