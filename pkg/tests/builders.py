"""Small named instances shared by the tests."""
from semwidth.generators import GRAPH_SIGNATURE
from semwidth.model import Hypergraph, Structure, gen_grid_instance, parse_structure


def st(text):
    return parse_structure(text.replace(";", ".\n") + ("" if text.endswith(".") else "."))


def graph(pairs, extra=()):
    dom = {x for p in pairs for x in p} | set(extra)
    return Structure(GRAPH_SIGNATURE, dom, {"E": list(pairs)})


def hg(*edges, vertices=()):
    return Hypergraph.from_sets([set(e) for e in edges], vertices=vertices)


TRIANGLE = hg("ab", "bc", "ac")
EDGE3 = hg("abc")
PATH3 = hg("ab", "bc")
CYCLE4 = hg("ab", "bc", "cd", "ad")
K2 = graph([("0", "1"), ("1", "0")])
EDGE = graph([("a", "b")])
DIPATH = graph([("a", "b"), ("b", "c")])
BI_TRIANGLE = graph([(x, y) for x in "abc" for y in "abc" if x != y])


def grid(n, data=K2):
    return gen_grid_instance(n, data).left


def grid_graph(n):
    """n x n grid as a hypergraph with one edge per grid segment."""
    edges = []
    for i in range(n):
        for j in range(n):
            if i + 1 < n:
                edges.append({f"{i}{j}", f"{i + 1}{j}"})
            if j + 1 < n:
                edges.append({f"{i}{j}", f"{i}{j + 1}"})
    return Hypergraph.from_sets(edges)
