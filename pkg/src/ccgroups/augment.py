"""Phase two: add inverse names, inverse tables and unit tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .flatten import ConstRegistry, FlatEquation
from .terms import Term
from .theory import ConfigError, GroupSig, Mode, TheoryConfig


@dataclass
class AugmentedProblem:
    """The flat equation set handed to completion, plus bookkeeping.

    ``unit_table`` and ``inverse_table`` map each theory's associative
    symbol to the equations generated for it.
    """

    s_e: list[FlatEquation]
    registry: ConstRegistry
    cfg: TheoryConfig
    unit_table: dict[str, list[FlatEquation]] = field(default_factory=dict)
    inverse_table: dict[str, list[FlatEquation]] = field(default_factory=dict)
    named_inverses: list[FlatEquation] = field(default_factory=list)

    @property
    def units(self) -> list[FlatEquation]:
        return [e for eqs in self.unit_table.values() for e in eqs]


def _dedup(eqs) -> list[FlatEquation]:
    seen: set[FlatEquation] = set()
    out = []
    for e in eqs:
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out


def unit_table(constants: Sequence[str], sig: GroupSig) -> list[FlatEquation]:
    """``f(c,1) ≈ c`` and ``f(1,c) ≈ c`` for every constant ``c``."""
    one = Term(sig.unit)
    out = []
    for name in constants:
        c = Term(name)
        out.append(FlatEquation(Term(sig.op, (c, one)), c))
        out.append(FlatEquation(Term(sig.op, (one, c)), c))
    return _dedup(out)


def _inverse_pairs(eqs, inv: str) -> list[tuple[Term, Term]]:
    """``(c, d)`` for every equation ``i(c) ≈ d`` in ``eqs``."""
    pairs = []
    for e in eqs:
        for s, t in ((e.lhs, e.rhs), (e.rhs, e.lhs)):
            if s.head == inv and s.args and t.is_const:
                pairs.append((s.args[0], t))
    return pairs


def name_inverses(
    frozen_eqs: Sequence[FlatEquation],
    frozen_consts: Sequence[str],
    reg: ConstRegistry,
    sig: GroupSig,
) -> list[FlatEquation]:
    """Give every non-unit constant lacking an inverse fact a fresh inverse name.

    Both the equations and the constants are the copies taken before the
    loop started, so constants made here never get names of their own.
    """
    covered: set[Term] = set()
    for c, d in _inverse_pairs(frozen_eqs, sig.inverse):
        covered.add(c)
        covered.add(d)
    added = []
    for name in frozen_consts:
        if name == sig.unit:
            continue
        c = Term(name)
        if c in covered:
            continue
        m = reg.allocate()
        added.append(FlatEquation(Term(sig.inverse, (c,)), m))
    return added


def inverse_table(eqs, sig: GroupSig) -> list[FlatEquation]:
    one = Term(sig.unit)
    inv, op = sig.inverse, sig.op
    out = [FlatEquation(Term(inv, (one,)), one)]
    for c, d in _inverse_pairs(eqs, inv):
        out.append(FlatEquation(Term(inv, (d,)), c))
        out.append(FlatEquation(Term(op, (c, d)), one))
        out.append(FlatEquation(Term(op, (d, c)), one))
    return _dedup(out)


def _visit_order(reg: ConstRegistry) -> list[str]:
    # originals greatest first, then fresh constants oldest first
    return list(reg.originals) + list(reg.fresh)


def phase2_multigroup(eqs, reg: ConstRegistry, cfg: TheoryConfig) -> AugmentedProblem:
    """Inverse naming per theory over one frozen snapshot, then the tables."""
    sigs = cfg.sigs
    seen: set[str] = set()
    for s in sigs:
        if s.inverse is None:
            raise ConfigError(f"{s.op} has no inverse symbol")
        if seen & s.symbols():
            raise ConfigError("group signatures must be pairwise disjoint")
        seen |= s.symbols()
    frozen_eqs = list(eqs)
    frozen_consts = _visit_order(reg)
    e1 = list(eqs)
    named = []
    for s in sigs:
        new = name_inverses(frozen_eqs, frozen_consts, reg, s)
        named += new
        e1 += new
    reg.freeze()
    inv_tabs = {s.op: inverse_table(e1, s) for s in sigs}
    unit_tabs = {s.op: unit_table(reg.constants, s) for s in sigs}
    s_e = _dedup(e1 + [e for s in sigs for e in inv_tabs[s.op]] + [e for s in sigs for e in unit_tabs[s.op]])
    return AugmentedProblem(s_e, reg, cfg, unit_tabs, inv_tabs, named)


def phase2_group(eqs, reg: ConstRegistry, cfg: TheoryConfig) -> AugmentedProblem:
    if len(cfg.sigs) != 1:
        raise ConfigError("group augmentation needs exactly one signature")
    return phase2_multigroup(eqs, reg, cfg)


def phase2_monoid(eqs, reg: ConstRegistry, cfg: TheoryConfig) -> AugmentedProblem:
    (sig,) = cfg.sigs
    reg.freeze()
    units = unit_table(reg.constants, sig)
    return AugmentedProblem(_dedup(list(eqs) + units), reg, cfg, {sig.op: units})


def phase2_semigroup(eqs, reg: ConstRegistry, cfg: TheoryConfig) -> AugmentedProblem:
    reg.freeze()
    return AugmentedProblem(_dedup(eqs), reg, cfg)


def augment(eqs, reg: ConstRegistry, cfg: TheoryConfig) -> AugmentedProblem:
    """Dispatch on the theory mode."""
    return {
        Mode.SEMIGROUP: phase2_semigroup,
        Mode.MONOID: phase2_monoid,
        Mode.GROUP: phase2_group,
        Mode.MULTIGROUP: phase2_multigroup,
    }[cfg.mode](eqs, reg, cfg)
