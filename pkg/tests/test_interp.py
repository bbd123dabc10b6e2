import pytest
from hypothesis import given
from hypothesis import strategies as st

from lpsem.interp import (
    InconsistentInterpretation, PartialInterpretation, TruthValue, body_value, interp_from_json,
    interp_to_json, is_model, knowledge_leq, literal_value, totalize,
)
from lpsem.operators import least_model
from lpsem.syntax import Literal

from conftest import P_FIT, P_NAT, A, G, I, atoms, program_and_interp, programs, all_partial, all_subsets

T, F, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNDEFINED


def pos(s):
    return Literal(A(s), True)


def neg(s):
    return Literal(A(s), False)


def test_literal_values():
    assert literal_value(I("q", "-r"), neg("r")) is T
    assert literal_value(I(), pos("q")) is U and literal_value(I(), neg("q")) is U
    assert literal_value(I("q", "-r"), neg("q")) is F


def test_body_values():
    assert body_value(I("-p"), [neg("p")]) is T
    assert body_value(I(), []) is T
    assert body_value(I("-r"), [pos("p"), neg("r")]) is U
    assert body_value(I("-r"), [pos("r"), pos("p")]) is F


def test_is_model_examples():
    g = G(P_FIT)
    assert is_model(g, I("q", "-r"))
    assert not is_model(g, I("-q", "-r"))
    assert is_model(G(""), I("a", "-b"))


def test_undefined_body_forbids_false_head():
    g = G("a :- not b.")
    assert not is_model(g, I("-a"))
    assert is_model(g, I())


def test_totalize():
    assert totalize(atoms("q", "s"), atoms("p", "q", "r", "s")) == I("q", "s", "-p", "-r")
    assert totalize(frozenset(), frozenset()) == PartialInterpretation()
    g = G(P_NAT, depth=3)
    m, _ = least_model(g)
    tot = totalize(m, g.base)
    assert tot.true_set == g.base and tot.false_set == frozenset()


def test_knowledge_order():
    assert knowledge_leq(I("-r"), I("q", "-r"))
    assert knowledge_leq(I(), I("a", "-b"))
    assert not knowledge_leq(I("q"), I("-q"))
    assert I("-r") <= I("q", "-r")


def test_inconsistent_rejected():
    with pytest.raises(InconsistentInterpretation):
        PartialInterpretation(atoms("a"), atoms("a"))
    with pytest.raises(InconsistentInterpretation):
        I("a").union(I("-a"))


def test_string_form():
    assert str(I("q", "s", "-p")) == "{q, s, not p}"


def test_json_round_trip_and_sorting():
    i = I("s", "q", "-p")
    data = interp_to_json(i, atoms("p", "q", "r", "s"))
    assert data == {"true": ["q", "s"], "false": ["p"], "undefined": ["r"]}
    assert interp_from_json(data) == i


@pytest.mark.parametrize("bad", [[], {"true": "q"}, {"true": [1]}, {"true": ["q"], "false": ["q"]}])
def test_json_rejects_malformed(bad):
    with pytest.raises(ValueError):
        interp_from_json(bad)


@given(program_and_interp(max_atoms=4))
def test_negation_flips_truth_value(gi):
    g, i = gi
    for a in g.atoms:
        assert literal_value(i, Literal(a, False)) is literal_value(i, Literal(a, True)).flip()


@given(programs(max_atoms=4))
def test_totalized_interpretations_are_maximal(g):
    for m in all_subsets(g.base):
        tot = totalize(m, g.base)
        assert tot.is_total(g.base)
        assert not any(j != tot and knowledge_leq(tot, j) for j in all_partial(g.base))


@given(programs(max_atoms=4, max_clauses=5))
def test_flipping_a_fired_head_breaks_modelhood(g):
    for m in all_subsets(g.base):
        tot = totalize(m, g.base)
        if not is_model(g, tot):
            continue
        for c in g.clauses:
            if body_value(tot, c.body) is T and c.head not in {l.atom for l in c.body}:
                flipped = totalize(m - {c.head}, g.base)
                assert not is_model(g, flipped)


@given(st.sets(st.sampled_from("abcde")), st.sets(st.sampled_from("abcde")))
def test_union_is_least_upper_bound(xs, ys):
    i = PartialInterpretation(atoms(*xs), frozenset())
    j = PartialInterpretation(atoms(*ys), frozenset())
    u = i.union(j)
    assert knowledge_leq(i, u) and knowledge_leq(j, u)
    assert u.true_set == i.true_set | j.true_set
