"""Problem files: declarations, equations and queries.

Grammar, one statement per line, ``#`` starts a comment::

    theory group f i 1      # associative symbol, inverse, unit
    theory monoid f 1       # associative symbol, unit
    assoc g                 # associative symbol with no extra axioms
    fun h 1                 # uninterpreted symbol with its arity
    const a b c
    precedence a b c 1      # optional, greatest first
    eq f(a,b) = a
    decide f(a,b) = f(a,c)
    option fuel 5000
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .terms import Ordering, Signature, Term, render
from .theory import ConfigError, GroupSig, Mode, TheoryConfig

IDENT = re.compile(r"[A-Za-z0-9_]+")
TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|(\S))")


class ProblemError(ValueError):
    """Malformed problem text, with a 1-based position."""

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.msg, self.line, self.col = msg, line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + msg)


@dataclass
class Problem:
    cfg: TheoryConfig
    signature: Signature
    ordering: Ordering
    equations: list[tuple[Term, Term]] = field(default_factory=list)
    queries: list[tuple[Term, Term]] = field(default_factory=list)
    options: dict[str, int] = field(default_factory=dict)
    inverses: dict[str, str] = field(default_factory=dict)

    @property
    def constants(self) -> tuple[str, ...]:
        """Original constants, greatest first."""
        return self.ordering.precedence


class TermParser:
    """Recursive descent over ``name`` and ``name(t1,...,tn)``."""

    def __init__(self, arity, line: int = 0, offset: int = 0):
        # arity(name) -> int | None (variadic) ; raises KeyError if unknown
        self.arity = arity
        self.line = line
        self.offset = offset

    def parse(self, text: str) -> Term:
        self.toks = []
        for m in TOKEN.finditer(text):
            g = 1 if m.group(1) is not None else 2
            self.toks.append((m.group(g), m.start(g)))
        self.pos = 0
        self.text = text
        t = self.term()
        if self.pos != len(self.toks):
            self.fail("unexpected trailing input", self.toks[self.pos][1])
        return t

    def fail(self, msg: str, at: int | None = None):
        if at is None:
            at = self.toks[self.pos][1] if self.pos < len(self.toks) else len(self.text)
        raise ProblemError(msg, self.line, self.offset + at + 1)

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def expect(self, tok: str):
        if self.peek() != tok:
            self.fail(f"expected '{tok}'")
        self.pos += 1

    def term(self) -> Term:
        tok = self.peek()
        if tok is None or not IDENT.fullmatch(tok):
            self.fail("expected a symbol")
        at = self.toks[self.pos][1]
        self.pos += 1
        try:
            n = self.arity(tok)
        except KeyError:
            self.fail(f"unknown symbol '{tok}'", at)
        args: list[Term] = []
        if self.peek() == "(":
            self.pos += 1
            args.append(self.term())
            while self.peek() == ",":
                self.pos += 1
                args.append(self.term())
            self.expect(")")
        if n is None:
            if len(args) < 2:
                self.fail(f"associative symbol '{tok}' needs at least 2 arguments", at)
        elif len(args) != n:
            self.fail(f"'{tok}' expects {n} argument(s), got {len(args)}", at)
        return Term(tok, tuple(args))


def _split_eq(rest: str, line: int, offset: int) -> tuple[tuple[str, int], tuple[str, int]]:
    if rest.count("=") != 1:
        raise ProblemError("expected exactly one '='", line, offset + 1)
    i = rest.index("=")
    return (rest[:i], offset), (rest[i + 1 :], offset + i + 1)


def parse_problem(text: str) -> Problem:
    theories: list[tuple[str, GroupSig]] = []
    assoc_free: list[str] = []
    funs: dict[str, int] = {}
    consts: list[str] = []
    precedence: list[str] | None = None
    raw_eqs: list[tuple[str, tuple, tuple]] = []
    options: dict[str, int] = {}
    declared: dict[str, int] = {}

    def declare(name: str, line: int, col: int):
        if not IDENT.fullmatch(name):
            raise ProblemError(f"bad identifier '{name}'", line, col)
        if name in declared:
            raise ProblemError(f"'{name}' declared twice (first on line {declared[name]})", line, col)
        declared[name] = line

    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        indent = len(body) - len(body.lstrip())
        kw, _, rest = stripped.partition(" ")
        rest_off = indent + len(kw) + 1
        words = rest.split()
        col = lambda k: indent + stripped.index(words[k], len(kw)) + 1  # noqa: E731
        if kw == "theory":
            if not words or words[0] not in ("group", "monoid"):
                raise ProblemError("expected 'theory group f i 1' or 'theory monoid f 1'", ln, indent + 1)
            need = 4 if words[0] == "group" else 3
            if len(words) != need:
                raise ProblemError(f"'theory {words[0]}' takes {need - 1} symbols", ln, indent + 1)
            for k in range(1, need):
                declare(words[k], ln, col(k))
            if words[0] == "group":
                sig = GroupSig(words[1], words[3], words[2])
            else:
                sig = GroupSig(words[1], words[2])
            theories.append((words[0], sig))
        elif kw == "assoc":
            for k, w in enumerate(words):
                declare(w, ln, col(k))
                assoc_free.append(w)
        elif kw == "fun":
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ProblemError("expected 'fun name arity' with arity >= 1", ln, indent + 1)
            declare(words[0], ln, col(0))
            funs[words[0]] = int(words[1])
        elif kw == "const":
            for k, w in enumerate(words):
                declare(w, ln, col(k))
                consts.append(w)
        elif kw == "precedence":
            if precedence is not None:
                raise ProblemError("precedence given twice", ln, indent + 1)
            precedence = [(w, ln, col(k)) for k, w in enumerate(words)]
        elif kw in ("eq", "decide"):
            lhs, rhs = _split_eq(rest, ln, rest_off)
            raw_eqs.append((kw, (ln,) + lhs, (ln,) + rhs))
        elif kw == "option":
            if len(words) != 2 or words[0] != "fuel" or not words[1].isdigit():
                raise ProblemError("expected 'option fuel N'", ln, indent + 1)
            options["fuel"] = int(words[1])
        else:
            raise ProblemError(f"unknown statement '{kw}'", ln, indent + 1)

    kinds = [k for k, _ in theories]
    sigs = tuple(s for _, s in theories)
    try:
        if not theories:
            cfg = TheoryConfig.semigroup(assoc_free)
        elif kinds == ["monoid"]:
            cfg = TheoryConfig(Mode.MONOID, sigs, frozenset(assoc_free))
        elif "monoid" in kinds:
            raise ConfigError("a monoid theory cannot be combined with other theories")
        elif len(sigs) == 1:
            cfg = TheoryConfig(Mode.GROUP, sigs, frozenset(assoc_free))
        else:
            cfg = TheoryConfig(Mode.MULTIGROUP, sigs, frozenset(assoc_free))
    except ConfigError as e:
        raise ProblemError(str(e)) from None

    units = [s.unit for s in sigs]
    originals = consts + units
    if precedence is None:
        ordering = Ordering.from_declaration(consts, units)
    else:
        names = [w for w, _, _ in precedence]
        for w, ln, c in precedence:
            if w not in originals:
                raise ProblemError(f"precedence names '{w}', which is not a constant", ln, c)
        if len(set(names)) != len(names) or set(names) != set(originals):
            ln = precedence[0][1] if precedence else 0
            raise ProblemError("precedence must list every constant exactly once", ln, 1)
        ordering = Ordering(tuple(names))

    arities: dict[str, int | None] = dict(funs)
    for s in sigs:
        arities[s.op] = None
        arities[s.unit] = 0
        if s.inverse:
            arities[s.inverse] = 1
    for g in assoc_free:
        arities[g] = None
    for c in consts:
        arities[c] = 0

    def arity(name):
        return arities[name]

    problem = Problem(
        cfg,
        Signature(tuple(originals), dict(funs), cfg.assoc),
        ordering,
        options=options,
        inverses={s.inverse: s.op for s in sigs if s.inverse},
    )
    for kw, (ln1, src1, off1), (ln2, src2, off2) in raw_eqs:
        s = TermParser(arity, ln1, off1).parse(src1)
        t = TermParser(arity, ln2, off2).parse(src2)
        (problem.equations if kw == "eq" else problem.queries).append((s, t))
    return problem


def parse_term(text: str, problem: Problem) -> Term:
    """Parse a term against the symbols declared by ``problem``."""
    sig = problem.signature

    def arity(name):
        if name in problem.inverses:
            return 1
        if not sig.knows(name):
            raise KeyError(name)
        return sig.arity(name)

    return TermParser(arity).parse(text)


def render_problem(p: Problem) -> str:
    """Problem text that parses back to an equivalent problem."""
    lines = []
    for s in p.cfg.sigs:
        if s.inverse:
            lines.append(f"theory group {s.op} {s.inverse} {s.unit}")
        else:
            lines.append(f"theory monoid {s.op} {s.unit}")
    if p.cfg.free_assoc:
        lines.append("assoc " + " ".join(sorted(p.cfg.free_assoc)))
    for name, n in p.signature.functions.items():
        lines.append(f"fun {name} {n}")
    plain = [c for c in p.signature.constants if c not in p.cfg.units]
    if plain:
        lines.append("const " + " ".join(plain))
    lines.append("precedence " + " ".join(p.ordering.precedence))
    lines += [f"eq {render(s)} = {render(t)}" for s, t in p.equations]
    lines += [f"decide {render(s)} = {render(t)}" for s, t in p.queries]
    for k, v in p.options.items():
        lines.append(f"option {k} {v}")
    return "\n".join(lines) + "\n"
