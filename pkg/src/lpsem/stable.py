"""Gelfond-Lifschitz reduct, stable models and the alternating fixed point."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import CapExceededError
from .interp import PartialInterpretation, interp_to_json
from .operators import naive_least_model
from .syntax import Atom, Clause, GroundProgram, sorted_atoms

__all__ = ["AfpResult", "gl_reduct", "gl", "enumerate_stable", "afp", "DEFAULT_STABLE_CAP"]

DEFAULT_STABLE_CAP = 20


def gl_reduct(g: GroundProgram, m: Iterable[Atom]) -> GroundProgram:
    """``P/M``: drop clauses with a negated atom in ``m``, strip remaining negation."""
    m = frozenset(m)
    out = [
        Clause(c.head, tuple(l for l in c.body if l.positive))
        for c in g.clauses
        if not any(b in m for b in c.negative_body)
    ]
    return GroundProgram(tuple(out), g.base)


def gl(g: GroundProgram, m: Iterable[Atom]) -> frozenset[Atom]:
    m = frozenset(m)
    # least model of P/M without materialising the reduct
    return naive_least_model(c for c in g.clauses if not any(b in m for b in c.negative_body))


def enumerate_stable(g: GroundProgram, cap: int = DEFAULT_STABLE_CAP) -> list[frozenset[Atom]]:
    """All fixed points of ``GL_P``, sorted.

    Brute force over subsets of head atoms; atoms without clauses never occur
    in a ``GL_P`` image.
    """
    if len(g.base) > cap:
        raise CapExceededError("program", len(g.base), cap)
    heads = sorted_atoms(g.heads())
    found = []
    for bits in itertools.product((False, True), repeat=len(heads)):
        m = frozenset(a for a, b in zip(heads, bits) if b)
        if gl(g, m) == m:
            found.append(m)
    return sorted(found, key=lambda s: [str(a) for a in sorted_atoms(s)])


@dataclass(frozen=True)
class AfpResult:
    l_sequence: tuple[frozenset[Atom], ...]
    g_sequence: tuple[frozenset[Atom], ...]
    base: frozenset[Atom]

    @property
    def l_fix(self) -> frozenset[Atom]:
        return self.l_sequence[-1]

    @property
    def g_fix(self) -> frozenset[Atom]:
        return self.g_sequence[-1]

    @property
    def wf_model(self) -> PartialInterpretation:
        return PartialInterpretation(self.l_fix, self.base - self.g_fix)

    def to_json(self) -> dict:
        names = lambda s: [str(a) for a in sorted_atoms(s)]
        return {
            "L": [names(s) for s in self.l_sequence],
            "G": [names(s) for s in self.g_sequence],
            "L_P": names(self.l_fix),
            "G_P": names(self.g_fix),
            "wf_model": interp_to_json(self.wf_model, self.base),
        }


def afp(g: GroundProgram) -> AfpResult:
    """Alternating fixed point: ``L_{k+1} = GL(G_k)``, ``G_{k+1} = GL(L_k)``.

    Both sequences end with their repeated fixed point.
    """
    ls: list[frozenset[Atom]] = [frozenset()]
    gs: list[frozenset[Atom]] = [g.base]
    while True:
        nl, ng = gl(g, gs[-1]), gl(g, ls[-1])
        ls.append(nl)
        gs.append(ng)
        if nl == ls[-2] and ng == gs[-2]:
            break
    return AfpResult(tuple(ls), tuple(gs), g.base)
