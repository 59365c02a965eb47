import pytest
from hypothesis import given, settings, strategies as stx

from builders import BI_TRIANGLE, EDGE, K2, grid, graph
from oracles import hom_exists
from semwidth.errors import SignatureMismatch
from semwidth.generators import GRAPH_SIGNATURE, random_graph, random_signature, random_structure
from semwidth.hom import is_homomorphism
from semwidth.model import Structure
from semwidth.solver import run_decomposed, solve_bruteforce, solve_decomposed


def test_bruteforce_examples():
    assert solve_bruteforce(EDGE, EDGE) == (True, {"a": "a", "b": "b"})
    assert solve_bruteforce(BI_TRIANGLE, K2) == (False, None)
    sat, f = solve_bruteforce(grid(2), K2)
    assert sat and is_homomorphism(grid(2), K2, f)
    assert len(set(f.values())) == 2


def test_bruteforce_empty_data_domain():
    empty = Structure(GRAPH_SIGNATURE, [], {})
    assert solve_bruteforce(EDGE, empty) == (False, None)
    assert solve_bruteforce(empty, EDGE) == (True, {})


def test_decomposed_grid_uses_small_bags():
    run = run_decomposed(grid(3), K2, use_core=True)
    assert run.result
    assert len(run.structure.domain) == 2
    assert run.max_rows <= len(K2.domain) ** 2


def test_decomposed_examples():
    assert not solve_decomposed(BI_TRIANGLE, K2)
    path = graph([("a", "b"), ("b", "c"), ("c", "d")])
    for b in (K2, EDGE, BI_TRIANGLE, graph([("p", "p")])):
        assert solve_decomposed(path, b) == hom_exists(path, b)


def test_decomposed_isolated_elements():
    a = graph([("a", "b")], extra=["z"])
    assert solve_decomposed(a, K2, use_core=False)
    assert not solve_decomposed(Structure(GRAPH_SIGNATURE, ["z"], {}),
                                Structure(GRAPH_SIGNATURE, [], {}))


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        solve_decomposed(EDGE, Structure.from_facts([("F", ("a",))]))


@settings(max_examples=200, deadline=None)
@given(stx.integers(0, 2 ** 32), stx.booleans())
def test_decomposed_agrees_with_enumeration(seed, use_core):
    sig = random_signature(seed)
    a = random_structure(seed, elements=(1, 5), signature=sig, density=0.2, max_facts=6)
    b = random_structure(seed + 1, elements=(1, 3), signature=sig, density=0.5)
    expected = hom_exists(a, b)
    assert solve_decomposed(a, b, use_core=use_core) == expected
    sat, f = solve_bruteforce(a, b)
    assert sat == expected
    if sat:
        assert is_homomorphism(a, b, f)


@settings(max_examples=100, deadline=None)
@given(stx.integers(0, 2 ** 32))
def test_decomposed_on_graphs(seed):
    a = random_graph(seed, vertices=(1, 6), density=0.3)
    b = random_graph(seed + 3, vertices=(1, 3), density=0.4)
    assert solve_decomposed(a, b) == solve_decomposed(a, b, use_core=False) == hom_exists(a, b)
