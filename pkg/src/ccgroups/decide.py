"""Normal forms under the completed rules plus the theory rules, and queries on them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .augment import AugmentedProblem
from .completion import CompletionResult, Rule, RuleIndex, Status
from .flatten import ConstRegistry
from .terms import Ordering, Term, assoc_flatten, iter_rewrites, plug, render_word, word
from .theory import GroupSig, Mode, TheoryConfig, theory_root_steps


class Undecided(RuntimeError):
    """Raised when querying a system whose completion ran out of fuel."""


class UnsupportedMode(ValueError):
    pass


@dataclass
class CompletedSystem:
    rules: list[Rule]
    cfg: TheoryConfig
    ordering: Ordering
    registry: ConstRegistry | None = None
    status: Status = Status.COMPLETED
    _index: RuleIndex = field(init=False, repr=False)
    _memo: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self._index = RuleIndex(self.cfg.assoc, self.rules)

    @classmethod
    def from_result(cls, result: CompletionResult, problem: AugmentedProblem, ordering: Ordering) -> "CompletedSystem":
        return cls(result.rules, problem.cfg, ordering, problem.registry, result.status)

    @property
    def index(self) -> RuleIndex:
        return self._index

    def root_steps(self, t: Term) -> Iterator[tuple[Term, str]]:
        """Completed rules first, then theory rules, at the root of ``t``."""
        for r2, rule in self._index.root_steps(t):
            yield r2, repr(rule)
        yield from theory_root_steps(t, self.cfg)

    def steps(self, t: Term) -> Iterator[tuple[Term, str]]:
        return iter_rewrites(t, self.root_steps, self.cfg.assoc)


def normalize(t: Term, cs: CompletedSystem) -> Term:
    """Normal form of ``t`` (flattened first); memoized per system."""
    t = assoc_flatten(t, cs.cfg.assoc)
    return _norm(t, cs, cs._memo)


def _norm(t: Term, cs: CompletedSystem, memo: dict) -> Term:
    r = memo.get(t)
    if r is not None:
        return r
    s = t
    for k in range(len(t.args) - 1, -1, -1):
        s = plug(s, k, _norm(t.args[k], cs, memo), cs.cfg.assoc)
    r = s
    for s2, _ in cs.root_steps(s):
        r = _norm(s2, cs, memo)
        break
    memo[t] = r
    return r


def rewrite_trace(
    t: Term,
    cs: CompletedSystem,
    strategy: str = "outermost",
    rng: random.Random | None = None,
    limit: int = 100_000,
) -> list[tuple[Term, str]]:
    """Step-by-step rewriting to normal form.

    Returns ``[(t0, ""), (t1, rule1), ...]``.  ``strategy`` is
    ``"outermost"`` (leftmost-outermost) or ``"random"`` (uniform over all
    redexes, using ``rng``).
    """
    t = assoc_flatten(t, cs.cfg.assoc)
    out = [(t, "")]
    rng = rng or random.Random(0)
    for _ in range(limit):
        if strategy == "outermost":
            step = next(cs.steps(t), None)
        elif strategy == "random":
            options = list(cs.steps(t))
            step = rng.choice(options) if options else None
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        if step is None:
            return out
        t = step[0]
        out.append(step)
    raise RuntimeError("rewriting did not terminate within the step limit")


def decide_eq(s: Term, t: Term, cs: CompletedSystem) -> bool:
    if cs.status is not Status.COMPLETED:
        raise Undecided("undecided: completion diverged")
    return normalize(s, cs) is normalize(t, cs)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[str, str], ...]

    def render(self) -> list[str]:
        return [f"{u} ≈ {v}" for u, v in self.relations]


def _as_word(t: Term, sig: GroupSig) -> tuple[Term, ...]:
    if t.is_const and t.head == sig.unit:
        return ()
    return word(t, sig.op)


def extract_presentation(problem: AugmentedProblem, sig: GroupSig | None = None) -> MonoidPresentation:
    """Generators and relations from the equations that mention the group operation.

    Unit-table equations are left out; the unit is written as ``λ``.
    """
    if problem.cfg.mode not in (Mode.GROUP, Mode.MULTIGROUP):
        raise UnsupportedMode("presentations are only defined for group theories")
    sig = sig or problem.cfg.sigs[0]
    units = set(problem.unit_table.get(sig.op, []))
    gens: list[str] = []
    rels = []
    for e in problem.s_e:
        if e in units:
            continue
        if not any(s.head == sig.op and s.args for s in e.sides):
            continue
        if any(s.args and s.head != sig.op for s in e.sides):
            continue
        u, v = (_as_word(s, sig) for s in e.sides)
        if e.lhs.is_const and not e.rhs.is_const:
            u, v = v, u
        for c in u + v:
            if c.head not in gens:
                gens.append(c.head)
        rels.append((render_word(u), render_word(v)))
    return MonoidPresentation(tuple(gens), tuple(rels))


def enumerate_normal_forms(
    cs: CompletedSystem,
    generators,
    max_len: int,
    sig: GroupSig | None = None,
) -> tuple[list[str], bool]:
    """Irreducible words over ``generators`` up to ``max_len`` letters.

    Words grow one letter at a time from irreducible words, so only the
    new suffixes need checking.  The flag reports whether length
    ``max_len`` still produced new words; it is a hint, not a proof of
    finiteness.
    """
    if cs.status is not Status.COMPLETED:
        raise Undecided("undecided: completion diverged")
    sig = sig or cs.cfg.sigs[0]
    f = sig.op
    idx = cs.index
    letters = [Term(g) for g in generators if not idx.reducible(Term(g))]
    rules = idx.assoc_rules(f)
    lhs_words = [r.lhs.args for r in rules]

    def tail_reducible(w: tuple[Term, ...]) -> bool:
        for u in lhs_words:
            if len(u) <= len(w) and w[len(w) - len(u) :] == u:
                return True
        return False

    layer: list[tuple[Term, ...]] = [()]
    found = [()]
    grew = False
    for n in range(1, max_len + 1):
        nxt = []
        for w in layer:
            for c in letters:
                w2 = w + (c,)
                if not tail_reducible(w2):
                    nxt.append(w2)
        found += nxt
        layer = nxt
        grew = bool(nxt)
        if not nxt:
            break
    return [render_word(w) for w in found], grew


def word_term(cs: CompletedSystem, words, sig: GroupSig | None = None) -> Term:
    """The term ``f(w)`` for a word of constant names, or the unit for the empty word."""
    sig = sig or cs.cfg.sigs[0]
    w = tuple(Term(c) for c in words)
    if not w:
        return Term(sig.unit)
    return w[0] if len(w) == 1 else Term(sig.op, w)
