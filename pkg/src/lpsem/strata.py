"""Dependency analysis, weak stratification and the weakly perfect model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal as Lit

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from .errors import InternalError
from .interp import PartialInterpretation, interp_to_json
from .operators import definite_partial_model
from .syntax import Atom, Clause, GroundProgram, Literal, sorted_atoms

__all__ = [
    "DependencyInfo", "WPRound", "WeaklyPerfectResult", "dependency", "bottom_stratum",
    "bottom_layer", "wp_reduct", "weakly_perfect", "local_stratification",
]


@dataclass(frozen=True)
class DependencyInfo:
    """Dependency relations of a ground program over its base.

    Pairs are ``(B, A)`` read as "B ≤ A" (A depends on B) and "B < A"
    (A depends negatively on B). ``refers_to`` holds ``(A, B)``: A refers to B.
    """

    atoms: tuple[Atom, ...]
    refers_to: frozenset[tuple[Atom, Atom]]
    refers_neg: frozenset[tuple[Atom, Atom]]
    leq: frozenset[tuple[Atom, Atom]]
    lt: frozenset[tuple[Atom, Atom]]
    components: tuple[frozenset[Atom], ...]
    trivial: tuple[bool, ...]

    def component_of(self, a: Atom) -> frozenset[Atom]:
        return next(c for c in self.components if a in c)

    def precedes(self, c1: frozenset[Atom], c2: frozenset[Atom]) -> bool:
        """``C1 ≺ C2``: distinct and every member of C1 is below some member of C2."""
        return c1 != c2 and all(any((a1, a2) in self.lt for a2 in c2) for a1 in c1)

    def minimal_components(self) -> list[int]:
        return [
            k for k, c in enumerate(self.components)
            if not any(self.precedes(other, c) for other in self.components)
        ]


def dependency(g: GroundProgram) -> DependencyInfo:
    atoms = tuple(g.atoms)
    idx = {a: k for k, a in enumerate(atoms)}
    n = len(atoms)
    refers = np.zeros((n, n), dtype=bool)
    neg = np.zeros((n, n), dtype=bool)
    for c in g.clauses:
        h = idx[c.head]
        for l in c.body:
            refers[h, idx[l.atom]] = True
            if not l.positive:
                neg[h, idx[l.atom]] = True
    reach = _kernels.transitive_closure(refers)           # reach[a, b]: a depends on b
    reach_refl = reach | np.eye(n, dtype=bool)
    # b < a iff a reaches* c, c refers negatively to d, d reaches* b
    below = (reach_refl.astype(np.int64) @ neg.astype(np.int64) @ reach_refl.astype(np.int64)) > 0
    mutual = below & below.T
    _, labels = connected_components(csr_matrix(mutual | np.eye(n, dtype=bool)), directed=False)
    groups: dict[int, list[Atom]] = {}
    for k, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(atoms[k])
    comps = sorted((frozenset(v) for v in groups.values()), key=lambda c: [str(a) for a in sorted_atoms(c)])
    trivial = tuple(len(c) == 1 and not below[idx[next(iter(c))], idx[next(iter(c))]] for c in comps)
    pairs = lambda m: frozenset((atoms[i], atoms[j]) for i, j in zip(*np.nonzero(m)))
    return DependencyInfo(
        atoms=atoms,
        refers_to=pairs(refers),
        refers_neg=pairs(neg),
        leq=frozenset((b, a) for a, b in pairs(reach)),
        lt=frozenset((b, a) for a, b in pairs(below)),
        components=tuple(comps),
        trivial=trivial,
    )


def bottom_stratum(g: GroundProgram, info: DependencyInfo | None = None,
                   trivial_only: bool = False) -> tuple[frozenset[Atom], dict]:
    """Union of the ≺-minimal components.

    The evidence maps every non-minimal component to the components
    preceding it. With ``trivial_only`` non-trivial minimal components are
    left out.
    """
    info = info or dependency(g)
    minimal = set(info.minimal_components())
    evidence = {
        comp: [o for o in info.components if info.precedes(o, comp)]
        for k, comp in enumerate(info.components) if k not in minimal
    }
    s: set[Atom] = set()
    for k in minimal:
        if trivial_only and not info.trivial[k]:
            continue
        s |= info.components[k]
    return frozenset(s), evidence


def bottom_layer(g: GroundProgram, stratum: frozenset[Atom] | None = None) -> GroundProgram:
    if stratum is None:
        stratum, _ = bottom_stratum(g)
    return GroundProgram.from_clauses((c for c in g.clauses if c.head in stratum), stratum)


def wp_reduct(g: GroundProgram, i: PartialInterpretation) -> GroundProgram:
    """Three-step reduct ``P/I`` used by the weakly perfect construction.

    1. drop clauses with a body literal false in ``i`` or a head defined in ``i``;
    2. drop body literals true in ``i``;
    3. drop non-unit clauses whose head also has a unit clause.
    """
    def lit_true(l: Literal) -> bool:
        return (l.atom in i.true_set) if l.positive else (l.atom in i.false_set)

    def lit_false(l: Literal) -> bool:
        return (l.atom in i.false_set) if l.positive else (l.atom in i.true_set)

    step1 = [c for c in g.clauses if c.head not in i.defined and not any(lit_false(l) for l in c.body)]
    step2 = [Clause(c.head, tuple(l for l in c.body if not lit_true(l))) for c in step1]
    units = {c.head for c in step2 if c.is_unit}
    step3 = [c for c in step2 if c.is_unit or c.head not in units]
    return GroundProgram(tuple(step3), g.base)


@dataclass(frozen=True)
class WPRound:
    index: int
    n: PartialInterpretation
    program: GroundProgram
    eliminated: frozenset[Atom]
    stratum: frozenset[Atom]
    layer: GroundProgram
    m: PartialInterpretation | None
    stop: str | None = None

    def to_json(self, base) -> dict:
        names = lambda s: [str(a) for a in sorted_atoms(s)]
        return {
            "N": interp_to_json(self.n, base),
            "R": names(self.eliminated),
            "S": names(self.stratum),
            "layer": [str(c) for c in self.layer.clauses],
            "M": interp_to_json(self.m, base) if self.m is not None else self.stop,
        }


@dataclass(frozen=True)
class WeaklyPerfectResult:
    model: PartialInterpretation
    kind: Lit["total", "partial"]
    rounds: tuple[WPRound, ...] = field(default=())

    def to_json(self, base) -> dict:
        return {
            "model": interp_to_json(self.model, base),
            "kind": self.kind,
            "rounds": [r.to_json(base) for r in self.rounds],
        }


def weakly_perfect(g: GroundProgram, variant: Lit["modular", "literal"] = "modular") -> WeaklyPerfectResult:
    """Weakly perfect model by repeated definite bottom layers.

    ``variant="literal"`` stops as soon as the bottom layer has a negative
    literal. The default ``"modular"`` variant instead solves the trivial
    minimal components and only stops when none exist; it agrees with the
    literal one whenever the latter continues, and unlike it keeps the model
    between the Fitting and well-founded models.
    """
    rounds: list[WPRound] = []
    n_int = PartialInterpretation()
    for alpha in range(1, len(g.base) + 3):
        p_alpha = wp_reduct(g, n_int)
        occurring = p_alpha.occurring_atoms()
        eliminated = frozenset(a for a in g.base if a not in n_int.defined and a not in occurring)
        closing = PartialInterpretation(n_int.true_set, n_int.false_set | eliminated)
        if not p_alpha.clauses:
            rounds.append(WPRound(alpha, n_int, p_alpha, eliminated, frozenset(),
                                  GroundProgram(), None, "empty program"))
            return WeaklyPerfectResult(closing, "total", tuple(rounds))
        reduced = GroundProgram(p_alpha.clauses, occurring)
        stratum, _ = bottom_stratum(reduced, trivial_only=(variant == "modular"))
        layer = bottom_layer(reduced, stratum)
        stop = None
        if not stratum:
            stop = "empty bottom stratum"
        elif not layer.is_definite:
            if variant == "modular":
                raise InternalError("bottom layer of trivial components is not definite")
            stop = "bottom layer contains a negative literal"
        if stop:
            rounds.append(WPRound(alpha, n_int, p_alpha, eliminated, stratum, layer, None, stop))
            return WeaklyPerfectResult(closing, "partial", tuple(rounds))
        h = definite_partial_model(layer, stratum | layer.occurring_atoms())
        m_alpha = PartialInterpretation(h.true_set, h.false_set | eliminated)
        rounds.append(WPRound(alpha, n_int, p_alpha, eliminated, stratum, layer, m_alpha))
        n_int = n_int.union(m_alpha)
    raise InternalError("weakly perfect construction did not terminate")


def local_stratification(g: GroundProgram) -> tuple[bool, dict[Atom, int] | None]:
    """Check for a total level mapping with ``l(A) ≥ l(A_i)`` and ``l(A) > l(B_j)``.

    The witness puts every atom at the largest number of negative edges on a
    dependency path below it.
    """
    atoms = g.atoms
    idx = {a: k for k, a in enumerate(atoms)}
    n = len(atoms)
    if n == 0:
        return True, {}
    rows, cols = [], []
    for c in g.clauses:
        for l in c.body:
            rows.append(idx[c.head])
            cols.append(idx[l.atom])
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, scc = connected_components(graph, directed=True, connection="strong")
    for c in g.clauses:
        for b in c.negative_body:
            if scc[idx[c.head]] == scc[idx[b]]:
                return False, None
    # longest-path relaxation; the condensation is acyclic so n passes suffice
    level = np.zeros(n, dtype=np.int64)
    for _ in range(n + 1):
        changed = False
        for c in g.clauses:
            h = idx[c.head]
            for l in c.body:
                need = level[idx[l.atom]] + (0 if l.positive else 1)
                if level[h] < need:
                    level[h] = need
                    changed = True
        if not changed:
            break
    return True, {a: int(level[idx[a]]) for a in atoms}
