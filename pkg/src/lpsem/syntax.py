"""Normal logic programs: terms, atoms, clauses, a text parser and a grounder.

Program text looks like::

    % comments run to end of line
    p(0).
    p(s(X)) :- p(X).
    q :- not r, p(0).
    #atom extra.

Variables start with an uppercase letter or ``_``; predicate names, function
symbols and constants start with a lowercase letter or a digit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "Var", "Const", "Compound", "Term", "Atom", "Literal", "Clause", "Program",
    "GroundProgram", "ParseError", "GroundingError", "parse_program", "parse_atom",
    "render", "ground", "herbrand_base", "atom_key", "sorted_atoms",
    "DEFAULT_CONSTANT",
]

DEFAULT_CONSTANT = "c0"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GroundingError(RuntimeError):
    """Grounding would not terminate or would exceed the instance limit."""


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple["Term", ...]

    def __post_init__(self):
        if not self.args:
            raise ValueError("compound term needs at least one argument")

    def __str__(self) -> str:
        return f"{self.functor}({','.join(map(str, self.args))})"


Term = Union[Var, Const, Compound]


def _term_is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, Compound):
        return all(_term_is_ground(a) for a in t.args)
    return True


def _term_depth(t: Term) -> int:
    if isinstance(t, Compound):
        return 1 + max(_term_depth(a) for a in t.args)
    return 0


def _term_vars(t: Term) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Compound):
        for a in t.args:
            yield from _term_vars(a)


def _substitute(t: Term, theta: Mapping[Var, Term]) -> Term:
    if isinstance(t, Var):
        return theta.get(t, t)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_substitute(a, theta) for a in t.args))
    return t


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(map(str, self.args))})"

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return all(_term_is_ground(a) for a in self.args)

    @property
    def depth(self) -> int:
        return max((_term_depth(a) for a in self.args), default=0)

    def variables(self) -> Iterator[Var]:
        for a in self.args:
            yield from _term_vars(a)

    def substitute(self, theta: Mapping[Var, Term]) -> "Atom":
        return Atom(self.predicate, tuple(_substitute(a, theta) for a in self.args))


def atom_key(a: Atom) -> tuple[str, str]:
    """Display order: predicate name, then the rendered argument list."""
    return (a.predicate, ",".join(map(str, a.args)))


def sorted_atoms(atoms: Iterable[Atom]) -> list[Atom]:
    return sorted(atoms, key=atom_key)


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"not {self.atom}"

    def __invert__(self) -> "Literal":
        return Literal(self.atom, not self.positive)


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: tuple[Literal, ...] = ()

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."

    @property
    def is_definite(self) -> bool:
        return all(l.positive for l in self.body)

    @property
    def is_unit(self) -> bool:
        return not self.body

    @property
    def positive_body(self) -> tuple[Atom, ...]:
        return tuple(l.atom for l in self.body if l.positive)

    @property
    def negative_body(self) -> tuple[Atom, ...]:
        return tuple(l.atom for l in self.body if not l.positive)

    def atoms(self) -> Iterator[Atom]:
        yield self.head
        for l in self.body:
            yield l.atom

    def variables(self) -> list[Var]:
        """Distinct variables in order of first occurrence."""
        seen: dict[Var, None] = {}
        for a in self.atoms():
            for v in a.variables():
                seen.setdefault(v)
        return list(seen)


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...] = ()
    declared_atoms: frozenset[Atom] = frozenset()

    def __post_init__(self):
        for a in self.declared_atoms:
            if not a.is_ground:
                raise ValueError(f"declared atom {a} is not ground")


@dataclass(frozen=True)
class GroundProgram:
    """A finite set of ground clauses together with its Herbrand base."""

    clauses: tuple[Clause, ...] = ()
    base: frozenset[Atom] = field(default_factory=frozenset)

    def __post_init__(self):
        uniq = tuple(dict.fromkeys(self.clauses))
        object.__setattr__(self, "clauses", uniq)
        object.__setattr__(self, "base", frozenset(self.base))
        for c in uniq:
            for a in c.atoms():
                if a not in self.base:
                    raise ValueError(f"atom {a} of clause {c} is not in the base")
                if not a.is_ground:
                    raise ValueError(f"clause {c} is not ground")

    @classmethod
    def from_clauses(cls, clauses: Iterable[Clause], extra: Iterable[Atom] = ()) -> "GroundProgram":
        clauses = tuple(clauses)
        base = set(extra)
        for c in clauses:
            base.update(c.atoms())
        return cls(clauses, frozenset(base))

    def __eq__(self, other):
        if not isinstance(other, GroundProgram):
            return NotImplemented
        return set(self.clauses) == set(other.clauses) and self.base == other.base

    def __hash__(self):
        return hash((frozenset(self.clauses), self.base))

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __str__(self) -> str:
        return "\n".join(map(str, self.clauses))

    @cached_property
    def by_head(self) -> dict[Atom, tuple[Clause, ...]]:
        out: dict[Atom, list[Clause]] = {a: [] for a in self.base}
        for c in self.clauses:
            out[c.head].append(c)
        return {a: tuple(cs) for a, cs in out.items()}

    @cached_property
    def atoms(self) -> list[Atom]:
        """Base atoms in display order."""
        return sorted_atoms(self.base)

    @property
    def is_definite(self) -> bool:
        return all(c.is_definite for c in self.clauses)

    def occurring_atoms(self) -> frozenset[Atom]:
        return frozenset(a for c in self.clauses for a in c.atoms())

    def heads(self) -> frozenset[Atom]:
        return frozenset(c.head for c in self.clauses)

    def as_program(self) -> Program:
        return Program(self.clauses, self.base)


def herbrand_base(g: GroundProgram) -> list[Atom]:
    return g.atoms


# ---------------------------------------------------------------- parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<directive>\#[A-Za-z_]+)
  | (?P<upper>[A-Z_][A-Za-z0-9_]*)
  | (?P<lower>[a-z0-9][A-Za-z0-9_]*)
  | (?P<punct>[(),.])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        s = m.group()
        if kind not in ("ws", "comment"):
            if kind == "punct":
                kind = s
            elif kind == "lower" and s == "not":
                kind = "not"
            toks.append(_Tok(kind, s, line, pos - line_start + 1))
        nl = s.count("\n")
        if nl:
            line += nl
            line_start = pos + s.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.cur
        shown = tok.text or "end of input"
        raise ParseError(f"{msg} at {shown!r}", tok.line, tok.col)

    def expect(self, kind: str) -> _Tok:
        tok = self.cur
        if tok.kind != kind:
            self.fail(f"expected {kind!r}")
        self.i += 1
        return tok

    def program(self) -> Program:
        clauses: list[Clause] = []
        declared: list[Atom] = []
        while self.cur.kind != "eof":
            if self.cur.kind == "directive":
                tok = self.cur
                if tok.text != "#atom":
                    self.fail("unknown directive")
                self.i += 1
                a = self.atom()
                if not a.is_ground:
                    self.fail("variable in #atom directive", tok)
                self.expect(".")
                declared.append(a)
            else:
                clauses.append(self.clause())
        return Program(tuple(clauses), frozenset(declared))

    def clause(self) -> Clause:
        head = self.atom()
        body: list[Literal] = []
        if self.cur.kind == "if":
            self.i += 1
            body.append(self.literal())
            while self.cur.kind == ",":
                self.i += 1
                body.append(self.literal())
        self.expect(".")
        return Clause(head, tuple(body))

    def literal(self) -> Literal:
        if self.cur.kind == "not":
            tok = self.cur
            self.i += 1
            if self.cur.kind != "lower":
                self.fail("expected atom after 'not'", tok)
            return Literal(self.atom(), False)
        return Literal(self.atom(), True)

    def atom(self) -> Atom:
        tok = self.cur
        if tok.kind != "lower":
            self.fail("expected atom")
        self.i += 1
        return Atom(tok.text, self.args())

    def args(self) -> tuple[Term, ...]:
        if self.cur.kind != "(":
            return ()
        self.i += 1
        out = [self.term()]
        while self.cur.kind == ",":
            self.i += 1
            out.append(self.term())
        self.expect(")")
        return tuple(out)

    def term(self) -> Term:
        tok = self.cur
        if tok.kind == "upper":
            self.i += 1
            return Var(tok.text)
        if tok.kind == "lower":
            self.i += 1
            args = self.args()
            return Compound(tok.text, args) if args else Const(tok.text)
        self.fail("expected term")


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_atom(text: str) -> Atom:
    """Parse a single atom such as ``p(s(0))``."""
    p = _Parser(text)
    a = p.atom()
    if p.cur.kind != "eof":
        p.fail("trailing input after atom")
    return a


def render(p: Program | GroundProgram) -> str:
    lines = [str(c) for c in p.clauses]
    if isinstance(p, Program):
        declared = p.declared_atoms
    else:
        # atoms with an occurrence are implied by the clauses
        declared = p.base - p.occurring_atoms()
    lines += [f"#atom {a}." for a in sorted_atoms(declared)]
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------- grounding

def _signature(p: Program):
    consts: dict[str, None] = {}
    functors: dict[tuple[str, int], None] = {}
    preds: dict[tuple[str, int], None] = {}

    def walk(t: Term):
        if isinstance(t, Const):
            consts.setdefault(t.name)
        elif isinstance(t, Compound):
            functors.setdefault((t.functor, len(t.args)))
            for a in t.args:
                walk(a)

    atoms = [a for c in p.clauses for a in c.atoms()]
    atoms += sorted_atoms(p.declared_atoms)
    for a in atoms:
        preds.setdefault((a.predicate, a.arity))
        for t in a.args:
            walk(t)
    return list(consts), list(functors), list(preds)


def _universe(consts: Sequence[str], functors, depth_bound: int) -> list[Term]:
    levels: list[list[Term]] = [[Const(c) for c in consts]]
    seen = set(levels[0])
    for _ in range(depth_bound):
        pool = [t for lvl in levels for t in lvl]
        new: list[Term] = []
        for name, arity in functors:
            for args in itertools.product(pool, repeat=arity):
                t = Compound(name, args)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        if not new:
            break
        levels.append(new)
    return [t for lvl in levels for t in lvl]


def ground(p: Program, depth_bound: int | None = None, max_instances: int = 1_000_000) -> GroundProgram:
    """All ground instances of ``p`` over its depth-bounded Herbrand universe.

    Instances whose head is deeper than ``depth_bound`` are dropped, as are
    instances with a body atom outside the base.
    """
    consts, functors, preds = _signature(p)
    if functors and depth_bound is None:
        raise GroundingError("program has compound terms; a depth bound is required")
    bound = depth_bound if depth_bound is not None else 0
    if not consts:
        consts = [DEFAULT_CONSTANT]
    universe = _universe(consts, functors, bound) if functors else [Const(c) for c in consts]

    base: set[Atom] = set(p.declared_atoms)
    n_base = sum(len(universe) ** k for _, k in preds)
    if n_base > max_instances:
        raise GroundingError(f"Herbrand base would have {n_base} atoms (limit {max_instances})")
    for name, arity in preds:
        for args in itertools.product(universe, repeat=arity):
            base.add(Atom(name, args))

    out: list[Clause] = []
    for c in p.clauses:
        vs = c.variables()
        count = len(universe) ** len(vs)
        if count > max_instances:
            raise GroundingError(f"clause {c} has {count} ground instances (limit {max_instances})")
        for values in itertools.product(universe, repeat=len(vs)):
            theta = dict(zip(vs, values))
            head = c.head.substitute(theta)
            if functors and head.depth > bound:
                continue
            body = tuple(Literal(l.atom.substitute(theta), l.positive) for l in c.body)
            if any(l.atom not in base for l in body):
                continue
            out.append(Clause(head, body))
    for c in out:
        base.update(c.atoms())
    return GroundProgram(tuple(out), frozenset(base))
