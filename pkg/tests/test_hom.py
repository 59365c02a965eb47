import pytest
from hypothesis import given, settings, strategies as stx

from builders import BI_TRIANGLE, DIPATH, EDGE, K2, graph, grid, st
from oracles import all_homs, core_size, hom_exists
from semwidth.errors import SignatureMismatch
from semwidth.generators import random_graph, random_structure, random_signature
from semwidth.hom import (core, find_homomorphism, find_isomorphism, format_mapping,
                          hom_equivalent, is_contained, is_homomorphism, is_isomorphic,
                          parse_mapping)


def test_single_edge_embeds():
    assert find_homomorphism(st("E(x,y)"), st("E(0,1)")) == {"x": "0", "y": "1"}


def test_odd_cycle_not_two_colourable():
    assert find_homomorphism(BI_TRIANGLE, K2) is None
    assert all_homs(BI_TRIANGLE, K2) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_grid_maps_to_k2(n):
    f = find_homomorphism(grid(n), K2)
    assert f is not None and is_homomorphism(grid(n), K2, f)


def test_forbid_pairs():
    f = find_homomorphism(EDGE, K2, forbid={("a", "0")})
    assert f == {"a": "1", "b": "0"}
    assert find_homomorphism(EDGE, K2, forbid={("a", "0"), ("a", "1")}) is None


def test_signature_must_match():
    with pytest.raises(SignatureMismatch):
        find_homomorphism(EDGE, st("F(a,b)"))


def test_containment():
    assert is_contained(DIPATH, EDGE)
    assert not is_contained(EDGE, DIPATH)
    assert is_contained(DIPATH, DIPATH)


def test_equivalence():
    assert hom_equivalent(grid(3), K2)
    assert not hom_equivalent(EDGE, DIPATH)
    assert hom_equivalent(DIPATH, DIPATH)


def test_core_of_grid_is_one_bidirected_edge():
    for n in (2, 3, 4):
        c, f = core(grid(n))
        assert len(c.domain) == 2 and c.num_facts == 2
        x, y = c.domain
        assert c.facts("E") == {(x, y), (y, x)}
        assert is_homomorphism(grid(n), c, f)


def test_core_of_transitive_tournament_is_itself():
    t = graph([("a", "b"), ("a", "c"), ("b", "c")])
    assert core(t)[0] == t
    # oracle: every edge-preserving endomorphism is surjective
    assert all(len(set(f.values())) == 3 for f in all_homs(t, t))


def test_core_of_single_edge_is_itself():
    assert core(EDGE) == (EDGE, {"a": "a", "b": "b"})


def test_isomorphism():
    assert is_isomorphic(st("E(a,b)"), st("E(u,v)"))
    assert not is_isomorphic(st("E(a,b)"), st("E(a,b);E(b,a)"))
    f = find_isomorphism(DIPATH, graph([("z", "y"), ("y", "x")]))
    assert f == {"a": "z", "b": "y", "c": "x"}


def test_mapping_round_trip():
    f = {"x": "0", "y": "1"}
    assert parse_mapping(format_mapping(f)) == f


@settings(max_examples=80, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_find_homomorphism_matches_enumeration(seed):
    sig = random_signature(seed)
    a = random_structure(seed, elements=(1, 4), signature=sig, density=0.3)
    b = random_structure(seed + 1, elements=(1, 3), signature=sig, density=0.5)
    f = find_homomorphism(a, b)
    assert (f is not None) == hom_exists(a, b)
    if f is not None:
        assert is_homomorphism(a, b, f)


@settings(max_examples=80, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_core_properties(seed):
    a = random_structure(seed, elements=(1, 5), density=0.3, max_facts=8)
    c, f = core(a)
    assert len(c.domain) == core_size(a)
    assert c == a.induced(c.domain)
    assert is_homomorphism(a, c, f)
    assert all(f[x] == x for x in c.domain)
    assert hom_equivalent(a, c)


@settings(max_examples=40, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_cores_of_equivalent_structures_are_isomorphic(seed):
    a = random_graph(seed, vertices=(1, 4))
    # a plus a disjoint copy of part of it is equivalent to a
    extra = [(x + "'", y + "'") for x, y in sorted(a.facts("E"))[:2]]
    a2 = a.add_facts([("E", t) for t in extra])
    assert hom_equivalent(a, a2)
    assert is_isomorphic(core(a)[0], core(a2)[0])
