import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as stx

from builders import EDGE, DIPATH, K2, grid, graph
from oracles import hom_exists
from semwidth.checks import random_ucq
from semwidth.decomp import exact_width
from semwidth.errors import SignatureMismatch
from semwidth.generators import GRAPH_SIGNATURE, random_graph
from semwidth.hom import is_contained
from semwidth.model import Structure, hypergraph_of
from semwidth.ucq import (Ucq, make_nonredundant, parse_ucq, serialize_ucq, solve_ucq,
                          ucq_equivalent, ucq_semantic_subw_bounds, ucq_width)

BI_EDGE = graph([("a", "b"), ("b", "a")])
TRI = graph([("a", "b"), ("b", "c"), ("c", "a")])


def test_nr_examples():
    assert make_nonredundant(Ucq((EDGE, DIPATH))).disjuncts == (EDGE,)
    assert make_nonredundant(Ucq((EDGE,))).disjuncts == (EDGE,)
    copy = graph([("x", "y")])
    assert make_nonredundant(Ucq((EDGE, copy))).disjuncts == (EDGE,)
    assert make_nonredundant(Ucq((copy, EDGE))).disjuncts == (copy,)


def test_equivalence_examples():
    assert ucq_equivalent(Ucq((EDGE, DIPATH)), Ucq((EDGE,)))
    assert not ucq_equivalent(Ucq((EDGE,)), Ucq((BI_EDGE,)))
    u = Ucq((TRI, BI_EDGE))
    assert ucq_equivalent(u, u)


def test_subw_bound_examples():
    assert ucq_semantic_subw_bounds(Ucq((grid(3),))) == (1, 1)
    assert ucq_semantic_subw_bounds(Ucq((EDGE,))) == (1, 1)
    # directed triangle and bidirected edge: no homomorphism either way
    u = Ucq((TRI, BI_EDGE))
    assert len(make_nonredundant(u)) == 2
    assert ucq_semantic_subw_bounds(u) == (Fraction(3, 2), Fraction(3, 2))


def test_solve_examples():
    assert solve_ucq(Ucq((grid(3),)), K2)
    empty = Structure(GRAPH_SIGNATURE, ["0", "1"], {})
    assert not solve_ucq(Ucq((EDGE, TRI)), empty)


def test_width_of_ucq_is_max():
    u = Ucq((EDGE, TRI))
    assert ucq_width(u, lambda a: exact_width(hypergraph_of(a), "fhw")[0]) == Fraction(3, 2)


def test_signatures_must_agree():
    with pytest.raises(SignatureMismatch):
        Ucq((EDGE, Structure.from_facts([("F", ("a",))])))
    with pytest.raises(ValueError):
        Ucq(())


def test_ucq_text_round_trip():
    u = Ucq((EDGE, TRI))
    assert parse_ucq(serialize_ucq(u)) == u
    aligned = parse_ucq("E(a,b).\n---\nF(a).\n")
    assert aligned.signature.names == ("E", "F")


@settings(max_examples=120, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_ucq_properties(seed):
    rng = random.Random(seed)
    u = random_ucq(rng)
    b = random_graph(rng, vertices=(1, 3), density=0.4)
    nr = make_nonredundant(u)
    assert set(nr.disjuncts) <= set(u.disjuncts)
    for i, a in enumerate(nr.disjuncts):
        for j, a2 in enumerate(nr.disjuncts):
            assert i == j or not is_contained(a, a2)
    assert ucq_equivalent(nr, u)
    assert solve_ucq(u, b) == any(hom_exists(a, b) for a in u.disjuncts)
    base = rng.choice(u.disjuncts)
    bigger = Ucq(u.disjuncts + (base.add_facts([("E", (x, x)) for x in base.domain[:1]]),))
    assert ucq_equivalent(bigger, u)
    assert ucq_semantic_subw_bounds(bigger) == ucq_semantic_subw_bounds(u)
