import pytest
from hypothesis import given, settings, strategies as stx

from builders import K2, grid, st
from oracles import hom_exists
from semwidth.checks import shape_for
from semwidth.errors import HypergraphMismatch, NameCollision, NotAnEdge
from semwidth.generators import GRAPH_SIGNATURE, random_graph
from semwidth.hom import is_homomorphism, is_isomorphic
from semwidth.model import Structure
from semwidth.reductions import (extract_solution, pair, redh_reduce, satisfying_assignments,
                                 star_expand, unpair)
from semwidth.solver import solve_bruteforce


def test_star_expand_adds_unary_relations():
    a = star_expand(st("E(a,b)"))
    assert a.signature.names == ("E", "U_a", "U_b")
    assert a.facts("U_a") == {("a",)} and a.facts("U_b") == {("b",)}


def test_star_expand_empty_structure_unchanged():
    empty = Structure(GRAPH_SIGNATURE, [], {})
    assert star_expand(empty) == empty


def test_star_expand_name_collision():
    with pytest.raises(NameCollision):
        star_expand(st("U_a(a)"))


def test_star_expand_separates_non_isomorphic_inputs():
    a, b = st("E(a,b)"), st("E(a,b);E(b,a)")
    assert not is_isomorphic(a, b)
    sa, sb = star_expand(a), star_expand(b)
    assert sa.signature == sb.signature and not is_isomorphic(sa, sb)


def test_satisfying_assignments_examples():
    d = st("E(0,1)")
    assert satisfying_assignments(st("E(u,v)"), d, {"u", "v"}) == [{"u": "0", "v": "1"}]
    assert satisfying_assignments(st("E(u,v);E(v,u)"), d, {"u", "v"}) == []
    loop = st("E(0,0)")
    assert {"u": "0", "v": "0"} in satisfying_assignments(st("E(u,v)"), loop, "uv")
    with pytest.raises(NotAnEdge):
        satisfying_assignments(st("E(u,v)"), d, {"u"})


def test_pair_round_trip():
    assert unpair(pair("x", "0")) == ("x", "0")


def test_redh_single_edge():
    c, d = st("E(u,v)"), st("E(0,1)")
    inst = redh_reduce(c, d, st("R(u,v)"))
    assert inst.right.facts("R") == {("u@0", "v@1")}
    assert solve_bruteforce(c, d)[0] and solve_bruteforce(inst.left, inst.right)[0]


def test_redh_edgeless_data():
    c = st("E(u,v)")
    d = Structure(GRAPH_SIGNATURE, ["0", "1"], {})
    inst = redh_reduce(c, d, st("R(u,v)"))
    assert inst.right.facts("R") == frozenset()
    assert not solve_bruteforce(c, d)[0] and not solve_bruteforce(inst.left, inst.right)[0]


def test_redh_grid():
    c = grid(2)
    a, ident = shape_for(c)
    inst = redh_reduce(c, K2, a, ident)
    sat, g = solve_bruteforce(inst.left, inst.right)
    assert sat and solve_bruteforce(c, K2)[0]
    assert is_homomorphism(c, K2, extract_solution(g, ident))


def test_redh_rejects_wrong_shape():
    with pytest.raises(HypergraphMismatch):
        redh_reduce(st("E(u,v)"), K2, st("R(u,w)"))
    with pytest.raises(HypergraphMismatch):
        redh_reduce(st("E(u,v)"), K2, st("R(u,u);S(v,v)"))


@settings(max_examples=150, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_redh_preserves_solvability(seed):
    c = random_graph(seed, vertices=(1, 3), density=0.4)
    d = random_graph(seed + 7, vertices=(1, 3), density=0.5)
    a, ident = shape_for(c)
    inst = redh_reduce(c, d, a, ident)
    sat, g = solve_bruteforce(inst.left, inst.right)
    assert sat == hom_exists(c, d)
    if sat:
        assert is_homomorphism(c, d, extract_solution(g, ident))
