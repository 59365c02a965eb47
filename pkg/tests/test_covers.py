import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as stx

from builders import CYCLE4, EDGE3, TRIANGLE, grid, hg
from oracles import lp_min_cover, min_cover_size, min_hitting_set, vc_brute
from semwidth.covers import (FractionalCover, ding_bound, dual, exotic_witness,
                             format_cover, fractional_cover, gap_report, integral_cover,
                             is_reduced, is_shattered, parse_cover, pushforward_cover,
                             reduce, rho, rho_star, transversality, vc_dimension)
from semwidth.errors import NotAHomomorphism, NotReduced, UncoverableVertex
from semwidth.generators import random_hypergraph, random_reduced_hypergraph
from semwidth.hom import core
from semwidth.lp import covering_lp
from semwidth.model import hypergraph_of


def test_integral_cover_examples():
    assert integral_cover(TRIANGLE, "abc")[0] == 2 == min_cover_size(TRIANGLE.edge_sets, "abc")
    assert integral_cover(EDGE3, "abc") == (1, frozenset({"a_b_c"}))
    assert integral_cover(TRIANGLE, set()) == (0, frozenset())


def test_uncoverable_vertex():
    with pytest.raises(UncoverableVertex):
        integral_cover(hg("ab", vertices="abz"), {"z"})
    with pytest.raises(UncoverableVertex):
        fractional_cover(hg("ab", vertices="abz"), {"z"})


def test_fractional_cover_examples():
    tri = fractional_cover(TRIANGLE, "abc")
    assert tri.total == Fraction(3, 2) == lp_min_cover(TRIANGLE.edge_sets, "abc")
    assert set(tri.weights.values()) == {Fraction(1, 2)}
    assert fractional_cover(EDGE3, "abc").total == 1
    assert fractional_cover(CYCLE4, "abcd").total == 2 == lp_min_cover(CYCLE4.edge_sets, "abcd")


def test_covering_lp_direct():
    value, w = covering_lp([{0, 1}, {1, 2}, {0, 2}], 3)
    assert value == Fraction(3, 2) and w == [Fraction(1, 2)] * 3
    assert covering_lp([], 2) == (0, [0, 0])


@settings(max_examples=150, deadline=None)
@given(stx.integers(0, 2 ** 32), stx.integers(2, 6), stx.integers(1, 6))
def test_lp_and_set_cover_match_oracles(seed, nv, ne):
    h = random_hypergraph(seed, nv, ne)
    target = set(h.vertices) - set(h.isolated())
    fc = fractional_cover(h, target)
    assert fc.total == lp_min_cover(h.edge_sets, target)
    assert fc.covers(h, target)
    assert all(w >= 0 for w in fc.weights.values())
    assert fc.total == sum(fc.weights.values())
    size, chosen = integral_cover(h, target)
    assert size == min_cover_size(h.edge_sets, target) == len(chosen)
    assert target <= set().union(*(h.edges[n] for n in chosen))
    assert fc.total <= size


def test_pushforward_identity():
    x = fractional_cover(TRIANGLE, "abc")
    ident = {v: v for v in TRIANGLE.vertices}
    assert pushforward_cover(TRIANGLE, TRIANGLE, ident, x) == x


def test_pushforward_grid_onto_core_edge():
    g = hypergraph_of(grid(3))
    c, f = core(grid(3))
    h = hypergraph_of(c)
    uniform = FractionalCover.from_weights({n: Fraction(1, 2) for n in g.edges})
    y = pushforward_cover(g, h, f, uniform)
    assert y.total == uniform.total == 6
    assert list(y.weights.values()) == [6]


def test_pushforward_collapses_parallel_edges():
    g = hg("ab", "cd")
    h = hg("xy")
    x = FractionalCover.from_weights({"a_b": Fraction(1, 3), "c_d": Fraction(1, 2)})
    y = pushforward_cover(g, h, {"a": "x", "b": "y", "c": "x", "d": "y"}, x)
    assert y.weights == {"x_y": Fraction(5, 6)} and y.total == Fraction(5, 6)


def test_pushforward_rejects_non_homomorphism():
    with pytest.raises(NotAHomomorphism):
        pushforward_cover(hg("ab"), hg("x", "y"), {"a": "x", "b": "y"},
                          FractionalCover.from_weights({"a_b": Fraction(1)}))


def test_dual_examples():
    assert dual(TRIANGLE).edge_sets == {frozenset({"a_b", "a_c"}), frozenset({"a_b", "b_c"}),
                                        frozenset({"a_c", "b_c"})}
    assert dual(dual(TRIANGLE)) == TRIANGLE
    with pytest.raises(NotReduced):
        dual(hg("ab", vertices="abz"))


def test_transversality_examples():
    assert transversality(TRIANGLE)[:2] == (2, Fraction(3, 2))
    assert transversality(EDGE3)[:2] == (1, 1)
    assert transversality(hg("ab", "cd"))[:2] == (2, 2)


def test_gap_examples():
    g = gap_report(TRIANGLE)
    assert g.cigap == Fraction(4, 3) == g.tigap_of_dual
    # a single edge is reduced only once its vertices are merged
    with pytest.raises(NotReduced):
        gap_report(EDGE3)
    e = gap_report(reduce(EDGE3))
    assert len(reduce(EDGE3).vertices) == 1
    assert (e.rho, e.rho_star, e.tau, e.tau_star, e.cigap) == (1, 1, 1, 1, 1)


def test_ding_bound_values():
    assert ding_bound(0, 1) == pytest.approx(4 * math.log2(11))
    assert ding_bound(1, Fraction(3, 2)) == pytest.approx(8 * math.log2(16.5))


def test_vc_examples():
    assert vc_dimension(EDGE3)[0] == 0
    d, w = vc_dimension(TRIANGLE)
    assert d == 1 and len(w) == 1
    d, w = vc_dimension(hg("c", "a", "b", "ab"))
    assert (d, w) == (2, frozenset("ab"))
    assert is_shattered(TRIANGLE, set())


def test_exotic_examples():
    assert exotic_witness(hg("1", "2", "12"), 2) == frozenset("12")
    assert exotic_witness(hg("12", "23", "13"), 2) is not None
    assert exotic_witness(EDGE3, 2) is None


def test_reduce_examples():
    assert is_reduced(TRIANGLE) and reduce(TRIANGLE) == TRIANGLE
    assert reduce(hg("ab", "bc", "ac", vertices="abcz")) == TRIANGLE
    merged = reduce(hg("abx", "bc"))  # a and x lie in the same edges
    assert len(merged.vertices) == 3 and is_reduced(merged)
    assert not is_reduced(hg("ab", "abc"))  # a and b lie in the same edges
    assert is_reduced(hg("ab", "bc", "abd"))


def test_cover_round_trip():
    x = fractional_cover(TRIANGLE, "abc")
    text = format_cover(x)
    assert "total 3/2" in text
    assert parse_cover(text) == x


@settings(max_examples=120, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_duality_against_oracles(seed):
    h = random_reduced_hypergraph(seed, vertices=(2, 6), edges=(2, 6))
    d = dual(h)
    tau, tau_star, (hit, w) = transversality(d)
    assert tau == min_hitting_set(d.edge_sets, d.vertices) == rho(h)
    assert tau_star == rho_star(h)
    assert all(set(hit) & e for e in d.edges.values())
    assert all(sum(w[v] for v in e) >= 1 for e in d.edges.values())
    vc = vc_dimension(h)[0]
    assert vc == vc_brute(h.edge_sets, h.vertices)
    assert vc_dimension(d)[0] < 2 ** (vc + 1)
    assert dual(d).edge_sets == h.edge_sets


@settings(max_examples=60, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_reduce_is_idempotent_and_reduced(seed):
    h = random_hypergraph(seed, 6, 6)
    r = reduce(h)
    assert is_reduced(r)
    assert reduce(r) == r
    if r.edges:
        assert rho(r) == rho(h) and rho_star(r) == rho_star(h)
