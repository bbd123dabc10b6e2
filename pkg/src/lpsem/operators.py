"""Semantic operators on ground programs and a traced least-fixpoint driver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Literal as Lit

from .interp import InconsistentInterpretation, PartialInterpretation, TruthValue, body_value, interp_to_json, literal_value
from .syntax import Atom, Clause, GroundProgram, sorted_atoms

__all__ = [
    "NotDefiniteError", "SemanticsTrace", "tp", "fp_op", "phi", "greatest_unfounded",
    "wp", "lfp", "tp_plus", "least_model", "definite_partial_model", "naive_least_model",
]


class NotDefiniteError(ValueError):
    pass


@dataclass(frozen=True)
class SemanticsTrace:
    """Iterates ``F↑0, F↑1, ...`` of an operator, ending with a repeated fixpoint.

    ``iterates[fixpoint_index] == iterates[fixpoint_index + 1]``.
    """

    operator: str
    iterates: tuple[PartialInterpretation, ...]
    fixpoint_index: int

    @property
    def fixpoint(self) -> PartialInterpretation:
        return self.iterates[self.fixpoint_index]

    def to_json(self, base: Iterable[Atom] | None = None) -> dict:
        return {
            "operator": self.operator,
            "iterates": [interp_to_json(i, base) for i in self.iterates],
            "fixpoint_index": self.fixpoint_index,
        }


def tp(g: GroundProgram, i: PartialInterpretation) -> frozenset[Atom]:
    return frozenset(c.head for c in g.clauses if body_value(i, c.body) is TruthValue.TRUE)


def fp_op(g: GroundProgram, i: PartialInterpretation) -> frozenset[Atom]:
    return frozenset(
        a for a, cs in g.by_head.items()
        if all(body_value(i, c.body) is TruthValue.FALSE for c in cs)
    )


def phi(g: GroundProgram, i: PartialInterpretation) -> PartialInterpretation:
    t, f = tp(g, i), fp_op(g, i)
    assert not (t & f), "T_P and F_P overlap on a consistent interpretation"
    return PartialInterpretation(t, f)


def _has_false_literal(i: PartialInterpretation, c: Clause) -> bool:
    return any(literal_value(i, l) is TruthValue.FALSE for l in c.body)


def greatest_unfounded(g: GroundProgram, i: PartialInterpretation) -> frozenset[Atom]:
    """Greatest unfounded set w.r.t. ``i``, by descent from the whole base.

    An atom leaves the candidate set once it owns a clause with no false body
    literal and no positive body atom left in the candidate set.
    """
    # clauses blocked by a false literal never support anything
    live = {a: [c for c in cs if not _has_false_literal(i, c)] for a, cs in g.by_head.items()}
    u = set(g.base)
    changed = True
    while changed:
        changed = False
        for a in list(u):
            for c in live[a]:
                if not any(b in u for b in c.positive_body):
                    u.discard(a)
                    changed = True
                    break
    return frozenset(u)


def wp(g: GroundProgram, i: PartialInterpretation) -> PartialInterpretation:
    """``T_P(i) ∪ ¬U_P(i)``.

    Consistent along the iteration from ∅, but not for every ``i``: with
    ``p ← q`` and ``i = {q}`` where ``q`` has no clauses, ``p`` is both
    derived and unfounded. That case raises :class:`InconsistentInterpretation`.
    """
    t, u = tp(g, i), greatest_unfounded(g, i)
    if t & u:
        raise InconsistentInterpretation(
            f"W_P({i}) is inconsistent on {', '.join(str(a) for a in sorted_atoms(t & u))}")
    return PartialInterpretation(t, u)


_OPERATORS: dict[str, Callable[[GroundProgram, PartialInterpretation], PartialInterpretation]] = {
    "phi": phi,
    "wp": wp,
}


def lfp(g: GroundProgram, which: Lit["phi", "wp"] = "wp") -> tuple[PartialInterpretation, SemanticsTrace]:
    """Iterate ``which`` from the empty interpretation until it repeats.

    Returns the Fitting model for ``phi`` and the well-founded model for ``wp``.
    """
    op = _OPERATORS[which]
    iterates = [PartialInterpretation()]
    for _ in range(len(g.base) + 2):
        nxt = op(g, iterates[-1])
        iterates.append(nxt)
        if nxt == iterates[-2]:
            trace = SemanticsTrace(which, tuple(iterates), len(iterates) - 2)
            return nxt, trace
    raise AssertionError("fixpoint iteration did not stabilise within |base|+2 steps")


def _require_definite(g: GroundProgram):
    if not g.is_definite:
        bad = next(c for c in g.clauses if not c.is_definite)
        raise NotDefiniteError(f"program is not definite: {bad}")


def tp_plus(g: GroundProgram, m: Iterable[Atom]) -> frozenset[Atom]:
    _require_definite(g)
    m = frozenset(m)
    return frozenset(c.head for c in g.clauses if all(a in m for a in c.positive_body))


def least_model(g: GroundProgram) -> tuple[frozenset[Atom], SemanticsTrace]:
    """Least two-valued model of a definite program, ``T_P⁺↑ω``.

    The trace holds the two-valued iterates as interpretations with an empty
    false set.
    """
    _require_definite(g)
    iterates = [frozenset()]
    while True:
        nxt = tp_plus(g, iterates[-1])
        iterates.append(nxt)
        if nxt == iterates[-2]:
            break
    trace = SemanticsTrace("tp_plus", tuple(PartialInterpretation(s) for s in iterates), len(iterates) - 2)
    return iterates[-1], trace


def naive_least_model(clauses: Iterable[Clause]) -> frozenset[Atom]:
    """Least model of the positive parts of ``clauses`` by unit propagation."""
    clauses = list(clauses)
    missing = [len(set(c.positive_body)) for c in clauses]
    watch: dict[Atom, list[int]] = {}
    for k, c in enumerate(clauses):
        for b in set(c.positive_body):
            watch.setdefault(b, []).append(k)
    derived: set[Atom] = set()
    queue = [c.head for k, c in enumerate(clauses) if missing[k] == 0]
    while queue:
        a = queue.pop()
        if a in derived:
            continue
        derived.add(a)
        for k in watch.get(a, ()):
            missing[k] -= 1
            if missing[k] == 0:
                queue.append(clauses[k].head)
    return frozenset(derived)


def definite_partial_model(g: GroundProgram, base: Iterable[Atom] | None = None) -> PartialInterpretation:
    """The least model of a definite program, totalised over ``base``."""
    m, _ = least_model(g)
    base = frozenset(g.base if base is None else base) | m
    return PartialInterpretation(m, base - m)
