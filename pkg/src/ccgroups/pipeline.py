"""Flatten, augment, complete: the whole procedure for one problem."""

from __future__ import annotations

from dataclasses import dataclass

from .augment import AugmentedProblem, augment
from .completion import DEFAULT_FUEL, CompletionResult, complete
from .decide import CompletedSystem, decide_eq
from .flatten import FlatEquation, phase1
from .problem import Problem
from .terms import Ordering, Term


@dataclass
class Solved:
    problem: Problem
    flat: list[FlatEquation]
    augmented: AugmentedProblem
    ordering: Ordering
    result: CompletionResult
    system: CompletedSystem

    @property
    def completed(self) -> bool:
        return self.result.completed

    def decide(self, s: Term, t: Term) -> bool:
        return decide_eq(s, t, self.system)


def solve(
    problem: Problem,
    fuel: int | None = None,
    skip_unit_deduce: bool = False,
    trace: bool = True,
    max_rule_size: int | None = None,
) -> Solved:
    fuel = fuel or problem.options.get("fuel", DEFAULT_FUEL)
    flat, reg = phase1(problem.equations, problem.cfg, problem.ordering.precedence)
    aug = augment(flat, reg, problem.cfg)
    ordering = reg.ordering(problem.ordering)
    result = complete(aug, ordering, fuel, skip_unit_deduce, trace, max_rule_size)
    system = CompletedSystem.from_result(result, aug, ordering)
    return Solved(problem, flat, aug, ordering, result, system)
