"""Three-valued interpretations and truth evaluation."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .syntax import Atom, GroundProgram, Literal, parse_atom, sorted_atoms

__all__ = [
    "TruthValue", "PartialInterpretation", "InconsistentInterpretation",
    "literal_value", "body_value", "is_model", "totalize", "knowledge_leq",
    "interp_to_json", "interp_from_json",
]


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"

    def flip(self) -> "TruthValue":
        if self is TruthValue.TRUE:
            return TruthValue.FALSE
        if self is TruthValue.FALSE:
            return TruthValue.TRUE
        return self


class InconsistentInterpretation(ValueError):
    pass


@dataclass(frozen=True)
class PartialInterpretation:
    """A consistent pair of true and false atom sets.

    Two-valued interpretations are plain ``frozenset`` objects of atoms and
    become partial interpretations via :func:`totalize`.
    """

    true_set: frozenset[Atom] = frozenset()
    false_set: frozenset[Atom] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "true_set", frozenset(self.true_set))
        object.__setattr__(self, "false_set", frozenset(self.false_set))
        both = self.true_set & self.false_set
        if both:
            names = ", ".join(map(str, sorted_atoms(both)))
            raise InconsistentInterpretation(f"atoms both true and false: {names}")

    @classmethod
    def of(cls, true: Iterable[Atom] = (), false: Iterable[Atom] = ()) -> "PartialInterpretation":
        return cls(frozenset(true), frozenset(false))

    @property
    def defined(self) -> frozenset[Atom]:
        return self.true_set | self.false_set

    def value(self, a: Atom) -> TruthValue:
        if a in self.true_set:
            return TruthValue.TRUE
        if a in self.false_set:
            return TruthValue.FALSE
        return TruthValue.UNDEFINED

    def undefined(self, base: Iterable[Atom]) -> frozenset[Atom]:
        return frozenset(base) - self.defined

    def is_total(self, base: Iterable[Atom]) -> bool:
        return not self.undefined(base)

    def union(self, other: "PartialInterpretation") -> "PartialInterpretation":
        return PartialInterpretation(self.true_set | other.true_set, self.false_set | other.false_set)

    def __le__(self, other: "PartialInterpretation") -> bool:
        return knowledge_leq(self, other)

    def __str__(self) -> str:
        parts = [str(a) for a in sorted_atoms(self.true_set)]
        parts += [f"not {a}" for a in sorted_atoms(self.false_set)]
        return "{" + ", ".join(parts) + "}"


def literal_value(i: PartialInterpretation, l: Literal) -> TruthValue:
    v = i.value(l.atom)
    return v if l.positive else v.flip()


def body_value(i: PartialInterpretation, body: Iterable[Literal]) -> TruthValue:
    result = TruthValue.TRUE
    for l in body:
        v = literal_value(i, l)
        if v is TruthValue.FALSE:
            return v
        if v is TruthValue.UNDEFINED:
            result = v
    return result


def is_model(g: GroundProgram, i: PartialInterpretation) -> bool:
    for c in g.clauses:
        b = body_value(i, c.body)
        h = i.value(c.head)
        if b is TruthValue.TRUE and h is not TruthValue.TRUE:
            return False
        if b is TruthValue.UNDEFINED and h is TruthValue.FALSE:
            return False
    return True


def totalize(m: Iterable[Atom], base: Iterable[Atom]) -> PartialInterpretation:
    m = frozenset(m)
    base = frozenset(base)
    if not m <= base:
        raise ValueError("two-valued interpretation is not a subset of the base")
    return PartialInterpretation(m, base - m)


def knowledge_leq(i: PartialInterpretation, j: PartialInterpretation) -> bool:
    return i.true_set <= j.true_set and i.false_set <= j.false_set


def interp_to_json(i: PartialInterpretation, base: Iterable[Atom] | None = None) -> dict[str, list[str]]:
    out = {
        "true": [str(a) for a in sorted_atoms(i.true_set)],
        "false": [str(a) for a in sorted_atoms(i.false_set)],
    }
    if base is not None:
        out["undefined"] = [str(a) for a in sorted_atoms(i.undefined(base))]
    return out


def interp_from_json(data: Mapping[str, Any]) -> PartialInterpretation:
    """Inverse of :func:`interp_to_json`; the ``undefined`` list is ignored."""
    if not isinstance(data, Mapping):
        raise ValueError("expected an object with 'true' and 'false' lists")
    for key in ("true", "false"):
        if not isinstance(data.get(key, []), list) or not all(isinstance(x, str) for x in data.get(key, [])):
            raise ValueError(f"'{key}' must be a list of atom strings")
    true = [parse_atom(s) for s in data.get("true", [])]
    false = [parse_atom(s) for s in data.get("false", [])]
    return PartialInterpretation(frozenset(true), frozenset(false))
