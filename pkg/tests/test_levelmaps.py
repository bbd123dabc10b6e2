import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lpsem.errors import CapExceededError, DomainMismatchError, NotStableError, NotTotalError
from lpsem.interp import PartialInterpretation, is_model, totalize
from lpsem.levelmaps import (
    OMEGA, Condition, Level, LevelMapping, canonical_levels, certified_models, certify,
    find_certifying_levels, greatest_certified_model,
)
from lpsem.operators import NotDefiniteError, least_model, lfp
from lpsem.stable import enumerate_stable
from lpsem.strata import weakly_perfect

from conftest import P_FIT, P_NAT, P_SFI, P_WF, P_WS, Q_SUB, A, G, I, atoms, programs


def nat_levels(n):
    out, t = {}, "0"
    for k in range(n + 1):
        out[A(f"p({t})")] = k
        t = f"s({t})"
    return out


@st.composite
def interp_and_levels(draw, max_atoms=4):
    g = draw(programs(max_atoms=max_atoms, max_clauses=5))
    vals = draw(st.lists(st.sampled_from((0, 1, -1)), min_size=len(g.atoms), max_size=len(g.atoms)))
    i = PartialInterpretation(
        frozenset(a for a, v in zip(g.atoms, vals) if v == 1),
        frozenset(a for a, v in zip(g.atoms, vals) if v == -1),
    )
    ranks = draw(st.lists(st.integers(0, 3), min_size=len(g.atoms), max_size=len(g.atoms)))
    l = LevelMapping({a: r for a, r in zip(g.atoms, ranks) if a in i.defined})
    return g, i, l


# ---------------------------------------------------------------- levels

def test_level_order():
    assert Level(0, OMEGA) < Level(1, 0) < Level(1, 1) < Level(1, OMEGA)
    assert Level(2) == Level(2, 0)
    assert str(Level(0, OMEGA)) == "(0,ω)" and str(Level(3)) == "3"


def test_level_json():
    assert Level(2).to_json() == {"major": 2, "minor": 0}
    assert Level(0, OMEGA).to_json() == {"major": 0, "minor": "omega"}
    assert Level.from_json({"major": 0, "minor": "omega"}) == Level(0, OMEGA)
    assert Level.from_json(4) == Level(4)
    l = LevelMapping.of({"q": (1, 0), "p": (0, OMEGA)})
    assert l.to_json() == {"levels": {"p": {"major": 0, "minor": "omega"}, "q": {"major": 1, "minor": 0}}}
    assert LevelMapping.from_json(l.to_json()) == l


@pytest.mark.parametrize("bad", [{"levels": {"p": "x"}}, {"levels": {"p": -1}}, {"levels": []}, {"p": 0},
                                 {"levels": {"p": {"major": 0, "minor": 1.5}}}])
def test_level_json_rejects_malformed(bad):
    with pytest.raises(ValueError):
        LevelMapping.from_json(bad)


# ---------------------------------------------------------------- certification examples

def test_certify_fitting_example():
    assert certify(G(P_FIT), I("q", "-r"), {"r": 0, "q": 1}, "f").passed


def test_certify_well_founded_example():
    assert certify(G(P_WF), I("q", "s", "-p"), {"p": 0, "q": 1, "s": 2}, Condition.WF).passed


def test_certify_stable_example():
    g = G(Q_SUB)
    for lp in (0, 5):
        assert certify(g, totalize(atoms("q", "s"), g.base), {"q": 0, "s": 1, "p": lp}, Condition.STABLE).passed


def test_certify_sfi_example():
    g = G(P_SFI)
    for i in (I("p", "-q"), I("-p", "q")):
        assert certify(g, i, {"p": 0, "q": 1}, Condition.SFI).passed


def test_certify_definite_example():
    g = G(P_NAT, depth=3)
    m, _ = least_model(g)
    assert certify(g, totalize(m, g.base), nat_levels(3), Condition.DEF).passed


def test_certify_afp_pairs_as_wf():
    l = {"q": (1, 0), "s": (1, 1), "p": (0, OMEGA)}
    assert certify(G(P_WF), I("q", "s", "-p"), l, Condition.WF).passed


def test_certify_locstrat():
    assert certify(G(P_FIT), I(), {"p": 0, "q": 1, "r": 0}, Condition.LOCSTRAT).passed
    rep = certify(G("q. q :- not q."), I(), {"q": 3}, Condition.LOCSTRAT)
    assert not rep.passed and rep.violations[0].condition == "LOCSTRAT"


# ---------------------------------------------------------------- failures and violations

def test_wrong_levels_name_the_sub_condition():
    rep = certify(G(P_WF), I("q", "s", "-p"), {"p": 1, "q": 1, "s": 2}, Condition.WF)
    assert not rep.passed
    assert [(str(v.atom), v.condition) for v in rep.violations] == [("q", "WFi")]
    rep = certify(G(P_FIT), I("q", "-r", "-p"), {"r": 0, "q": 1, "p": 0}, Condition.F)
    assert [(str(v.atom), v.condition, str(v.clause)) for v in rep.violations] == [("p", "Fii", "p :- p.")]


def test_ws_violation_labels():
    g = G("a :- not b. b.")
    rep = certify(g, I("b", "-a"), {"a": 0, "b": 0}, Condition.WS)
    assert [(str(v.atom), v.condition) for v in rep.violations] == [("a", "WSiic")]


def test_not_a_model_fails():
    rep = certify(G(P_FIT), I("-q", "-r"), {"q": 0, "r": 0}, Condition.F)
    assert not rep.model and not rep.passed


def test_report_json():
    rep = certify(G(P_WF), I("q", "s", "-p"), {"p": 1, "q": 1, "s": 2}, Condition.WF)
    assert rep.to_json() == {
        "condition": "WF", "passed": False, "model": True,
        "violations": [{"atom": "q", "condition": "WFi", "clause": None}],
    }


def test_domain_and_totality_errors():
    with pytest.raises(DomainMismatchError):
        certify(G(P_FIT), I("q", "-r"), {"q": 1}, Condition.F)
    with pytest.raises(NotTotalError):
        certify(G(Q_SUB), I("q", "s"), {"q": 0, "s": 1, "p": 0}, Condition.STABLE)
    with pytest.raises(DomainMismatchError):
        certify(G(Q_SUB), totalize(atoms("q", "s"), G(Q_SUB).base), {"q": 0, "s": 1}, Condition.STABLE)
    with pytest.raises(NotDefiniteError):
        certify(G(P_FIT), I("q", "-p", "-r"), {"p": 0, "q": 0, "r": 0}, Condition.DEF)


def test_negative_literals_share_their_atom_level():
    # q :- not r needs l(q) > l(not r) = l(r)
    g = G(P_FIT)
    assert not certify(g, I("q", "-r"), {"r": 1, "q": 1}, Condition.F).passed


# ---------------------------------------------------------------- canonical levels

def test_canonical_examples():
    model, l = canonical_levels(G(P_WF), "afp")
    assert model == I("q", "s", "-p")
    assert l == LevelMapping.of({"q": (1, 0), "s": (1, 1), "p": (0, OMEGA)})
    model, l = canonical_levels(G(P_FIT), "fitting")
    assert model == I("q", "-r") and l == LevelMapping.of({"r": 0, "q": 1})
    model, l = canonical_levels(G(P_WF), "wf")
    assert l == LevelMapping.of({"p": 0, "q": 1, "s": 2})
    g = G(P_NAT, depth=3)
    assert canonical_levels(g, "least")[1] == LevelMapping(nat_levels(3))
    model, l = canonical_levels(G(Q_SUB), "stable", atoms("q", "s"))
    assert l[A("q")] == Level(0) and l[A("s")] == Level(1)


def test_canonical_stable_rejects_non_stable():
    with pytest.raises(NotStableError):
        canonical_levels(G(Q_SUB), "stable", atoms("p"))


def test_canonical_ws_levels():
    model, l = canonical_levels(G(P_WS), "ws")
    assert model == I("-d", "-e")
    assert certify(G(P_WS), model, l, Condition.WS).passed


@given(programs(max_atoms=5, max_clauses=7))
def test_extraction_certification_closure(g):
    for sem, cond in (("fitting", Condition.F), ("wf", Condition.WF), ("ws", Condition.WS), ("afp", Condition.WF)):
        model, l = canonical_levels(g, sem)
        assert l.domain == model.defined
        assert certify(g, model, l, cond).passed, sem
    for m in enumerate_stable(g):
        model, l = canonical_levels(g, "stable", m)
        assert certify(g, model, l, Condition.STABLE).passed


@given(programs(max_atoms=5, max_clauses=7, definite=True))
def test_least_levels_certify_def(g):
    model, l = canonical_levels(g, "least")
    assert certify(g, model, l, Condition.DEF).passed


# ---------------------------------------------------------------- oracle

def test_oracle_examples():
    assert greatest_certified_model(G(P_FIT), Condition.F).greatest == I("q", "-r")
    assert greatest_certified_model(G(P_WF), Condition.WF).greatest == I("q", "s", "-p")
    res = greatest_certified_model(G(P_SFI), Condition.SFI)
    assert set(res.maximal_models) == {I("p", "-q"), I("-p", "q")} and res.greatest is None


def test_oracle_cap():
    with pytest.raises(CapExceededError):
        greatest_certified_model(G("a. b. c. d. e. f."), Condition.F)
    assert greatest_certified_model(G("a. b. c. d. e. f."), Condition.F, cap=6).greatest.true_set == atoms(*"abcdef")


def test_oracle_rejects_locstrat():
    with pytest.raises(ValueError):
        certified_models(G(P_FIT), Condition.LOCSTRAT)


@given(programs(max_atoms=4, max_clauses=6))
def test_oracle_greatest_models(g):
    assert greatest_certified_model(g, Condition.F).greatest == lfp(g, "phi")[0]
    assert greatest_certified_model(g, Condition.WF).greatest == lfp(g, "wp")[0]
    assert greatest_certified_model(g, Condition.WS).greatest == weakly_perfect(g).model


@given(programs(max_atoms=4, max_clauses=6))
def test_oracle_certified_models_really_certify(g):
    for cond in (Condition.F, Condition.WF, Condition.WS, Condition.SFI):
        for i in certified_models(g, cond):
            assert is_model(g, i)
            l = find_certifying_levels(g, i, cond)
            assert l is not None and certify(g, i, l, cond).passed


@given(programs(max_atoms=4, max_clauses=6))
def test_total_fixpoints_match_total_certified_models(g):
    # lfp total iff some total model is certified with total levels
    for cond, which in ((Condition.F, "phi"), (Condition.WF, "wp")):
        total = lfp(g, which)[0].is_total(g.base)
        witnessed = any(i.is_total(g.base) for i in certified_models(g, cond))
        assert total == witnessed


@given(interp_and_levels())
def test_condition_strength(gil):
    g, i, l = gil
    f = certify(g, i, l, Condition.F).passed
    ws = certify(g, i, l, Condition.WS).passed
    wf = certify(g, i, l, Condition.WF).passed
    assert (not f or ws) and (not ws or wf)


@given(interp_and_levels())
def test_rank_collapse_preserves_certification(gil):
    g, i, l = gil
    scaled = LevelMapping({a: 10 * v.major + 7 for a, v in l.levels.items()})
    for cond in (Condition.F, Condition.WF, Condition.WS, Condition.SFI):
        assert certify(g, i, l, cond).passed == certify(g, i, scaled, cond).passed


def test_omega_is_infinite():
    assert OMEGA == math.inf
