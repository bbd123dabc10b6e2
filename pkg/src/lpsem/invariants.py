"""Cross-checks between the semantics, used by ``lpsem fuzz`` and the test suite.

Every check takes a ground program and returns ``None`` when the property
holds, or a short description of what went wrong.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

from .interp import PartialInterpretation, is_model, knowledge_leq, totalize
from .levelmaps import Condition, canonical_levels, certify, find_certifying_levels, greatest_certified_model
from .operators import fp_op, greatest_unfounded, least_model, lfp, tp
from .stable import afp, enumerate_stable, gl
from .strata import local_stratification, weakly_perfect, wp_reduct
from .syntax import GroundProgram, sorted_atoms

__all__ = ["CHECKS", "run_checks", "partial_interpretations"]

Check = Callable[[GroundProgram], "str | None"]

# brute-force checks enumerate 3^n interpretations; keep n small
ENUM_LIMIT = 4


def partial_interpretations(atoms) -> Iterator[PartialInterpretation]:
    atoms = sorted_atoms(atoms)
    for vals in itertools.product((0, 1, -1), repeat=len(atoms)):
        yield PartialInterpretation(
            frozenset(a for a, v in zip(atoms, vals) if v == 1),
            frozenset(a for a, v in zip(atoms, vals) if v == -1),
        )


def _small(g: GroundProgram) -> bool:
    return len(g.base) <= ENUM_LIMIT


def operators_monotone(g: GroundProgram) -> str | None:
    """Φ_P and W_P are monotone; compared as literal sets, since W_P may leave I_P."""
    if not _small(g):
        return None
    interps = list(partial_interpretations(g.base))
    images = {i: (tp(g, i), fp_op(g, i), greatest_unfounded(g, i)) for i in interps}
    for i in interps:
        ti, fi, ui = images[i]
        for j in interps:
            if knowledge_leq(i, j):
                tj, fj, uj = images[j]
                if not (ti <= tj and fi <= fj):
                    return f"phi not monotone at {i} <= {j}"
                if not ui <= uj:
                    return f"W_P not monotone at {i} <= {j}"
    return None


def unfounded_is_greatest(g: GroundProgram) -> str | None:
    if not _small(g):
        return None
    atoms = sorted_atoms(g.base)
    for i in partial_interpretations(g.base):
        union = set()
        for bits in itertools.product((False, True), repeat=len(atoms)):
            u = {a for a, b in zip(atoms, bits) if b}
            if all(
                any((l.atom in i.false_set) if l.positive else (l.atom in i.true_set) for l in c.body)
                or any(b in u for b in c.positive_body)
                for a in u for c in g.by_head[a]
            ):
                union |= u
        if greatest_unfounded(g, i) != union:
            return f"greatest unfounded set wrong at {i}"
    return None


def fitting_below_wf(g: GroundProgram) -> str | None:
    mf, _ = lfp(g, "phi")
    mw, _ = lfp(g, "wp")
    if not knowledge_leq(mf, mw):
        return f"Fitting model {mf} not below well-founded {mw}"
    if not is_model(g, mw) or not is_model(g, mf):
        return "fixpoint is not a model"
    return None


def gl_antitone(g: GroundProgram) -> str | None:
    if not _small(g):
        return None
    atoms = sorted_atoms(g.base)
    subsets = [frozenset(a for a, b in zip(atoms, bits) if b)
               for bits in itertools.product((False, True), repeat=len(atoms))]
    images = {s: gl(g, s) for s in subsets}
    for s in subsets:
        for t in subsets:
            if s <= t and not images[t] <= images[s]:
                return f"GL not antitone at {sorted_atoms(s)} <= {sorted_atoms(t)}"
    return None


def afp_matches_wf(g: GroundProgram) -> str | None:
    res = afp(g)
    mw, _ = lfp(g, "wp")
    if res.wf_model != mw:
        return f"alternating fixpoint {res.wf_model} differs from W_P fixpoint {mw}"
    for m in enumerate_stable(g):
        if not (res.l_fix <= m <= res.g_fix):
            return f"stable model {sorted_atoms(m)} outside [L_P, G_P]"
    return None


def stable_fages(g: GroundProgram) -> str | None:
    if not _small(g):
        return None
    stable = set(enumerate_stable(g))
    atoms = sorted_atoms(g.base)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        m = frozenset(a for a, b in zip(atoms, bits) if b)
        tot = totalize(m, g.base)
        certified = is_model(g, tot) and find_certifying_levels(g, tot, Condition.STABLE) is not None
        if certified != (m in stable):
            return f"Fages check disagrees on {sorted_atoms(m)}"
    return None


def weakly_perfect_between(g: GroundProgram) -> str | None:
    mf, _ = lfp(g, "phi")
    mw, _ = lfp(g, "wp")
    res = weakly_perfect(g)
    if not (knowledge_leq(mf, res.model) and knowledge_leq(res.model, mw)):
        return f"weakly perfect {res.model} not between {mf} and {mw}"
    for r in res.rounds:
        if any(c.head in r.n.defined for c in wp_reduct(g, r.n).clauses):
            return "reduct keeps a clause with a defined head"
    if res.kind == "total" and not res.model.is_total(g.base):
        return "weakly perfect model flagged total but is not"
    return None


def total_models_stable(g: GroundProgram) -> str | None:
    mf, _ = lfp(g, "phi")
    if mf.is_total(g.base) and gl(g, mf.true_set) != mf.true_set:
        return "total Fitting model is not stable"
    res = weakly_perfect(g)
    if res.model.is_total(g.base) and gl(g, res.model.true_set) != res.model.true_set:
        return "total weakly perfect model is not stable"
    return None


def definite_least_model(g: GroundProgram) -> str | None:
    if not g.is_definite:
        return None
    m, _ = least_model(g)
    res = weakly_perfect(g)
    if res.kind != "total" or res.model != totalize(m, g.base):
        return "weakly perfect model of a definite program is not the totalized least model"
    if _small(g):
        atoms = sorted_atoms(g.base)
        for bits in itertools.product((False, True), repeat=len(atoms)):
            s = frozenset(a for a, b in zip(atoms, bits) if b)
            if is_model(g, totalize(s, g.base)) and not m <= s:
                return f"least model not below two-valued model {sorted_atoms(s)}"
    return None


def canonical_levels_certify(g: GroundProgram) -> str | None:
    pairs = [("fitting", Condition.F), ("wf", Condition.WF), ("ws", Condition.WS), ("afp", Condition.WF)]
    for sem, cond in pairs:
        model, levels = canonical_levels(g, sem)
        if not certify(g, model, levels, cond).passed:
            return f"{sem} levels do not certify {cond.name}"
    # F-certified pairs are WS-certified, WS-certified are WF-certified
    model, levels = canonical_levels(g, "fitting")
    if not certify(g, model, levels, Condition.WS).passed:
        return "F levels do not certify WS"
    model, levels = canonical_levels(g, "ws")
    if not certify(g, model, levels, Condition.WF).passed:
        return "WS levels do not certify WF"
    for m in enumerate_stable(g):
        model, levels = canonical_levels(g, "stable", m)
        if not certify(g, model, levels, Condition.STABLE).passed:
            return f"stable levels do not certify {sorted_atoms(m)}"
    if g.is_definite:
        model, levels = canonical_levels(g, "least")
        if not certify(g, model, levels, Condition.DEF).passed:
            return "least-model levels do not certify DEF"
    return None


def locstrat_witness(g: GroundProgram) -> str | None:
    ok, witness = local_stratification(g)
    if ok:
        mw, _ = lfp(g, "wp")
        if not certify(g, mw, witness, Condition.LOCSTRAT).passed:
            return "local stratification witness fails"
        if not mw.is_total(g.base):
            return "locally stratified program with a partial well-founded model"
    return None


def oracle_greatest(g: GroundProgram) -> str | None:
    if not _small(g):
        return None
    expected = {
        Condition.F: lfp(g, "phi")[0],
        Condition.WF: lfp(g, "wp")[0],
        Condition.WS: weakly_perfect(g).model,
    }
    for cond, model in expected.items():
        got = greatest_certified_model(g, cond).greatest
        if got != model:
            return f"greatest {cond.name}-certified model {got} differs from {model}"
    return None


CHECKS: dict[str, Check] = {
    "operators_monotone": operators_monotone,
    "unfounded_is_greatest": unfounded_is_greatest,
    "fitting_below_wf": fitting_below_wf,
    "gl_antitone": gl_antitone,
    "afp_matches_wf": afp_matches_wf,
    "stable_fages": stable_fages,
    "weakly_perfect_between": weakly_perfect_between,
    "total_models_stable": total_models_stable,
    "definite_least_model": definite_least_model,
    "canonical_levels_certify": canonical_levels_certify,
    "locstrat_witness": locstrat_witness,
    "oracle_greatest": oracle_greatest,
}


def run_checks(g: GroundProgram) -> list[tuple[str, str]]:
    """All failing checks as ``(name, message)`` pairs."""
    out = []
    for name, check in CHECKS.items():
        msg = check(g)
        if msg is not None:
            out.append((name, msg))
    return out
