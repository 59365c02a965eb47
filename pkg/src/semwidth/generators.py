"""Seeded random structures and hypergraphs for property checks."""
from __future__ import annotations

import random
from itertools import product

from .covers import reduce
from .model import Hypergraph, Signature, Structure

GRAPH_SIGNATURE = Signature((("E", 2),))


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_signature(seed, relations=(1, 3), arity=(1, 3)) -> Signature:
    rng = _rng(seed)
    count = rng.randint(*relations)
    return Signature(tuple((f"R{i}", rng.randint(*arity)) for i in range(count)))


def random_structure(seed, elements=(2, 6), signature: Signature | None = None,
                     density: float = 0.25, max_facts: int | None = None) -> Structure:
    """Each possible tuple is a fact with probability ``density``.

    Elements are named ``a0, a1, ...``; every element is kept in the domain
    even if it ends up in no fact.
    """
    rng = _rng(seed)
    sig = signature if signature is not None else random_signature(rng)
    n = rng.randint(*elements) if isinstance(elements, tuple) else elements
    dom = [f"a{i}" for i in range(n)]
    facts = {}
    for name, ar in sig.symbols:
        facts[name] = [t for t in product(dom, repeat=ar) if rng.random() < density]
    if max_facts is not None:
        flat = [(r, t) for r, ts in facts.items() for t in ts]
        rng.shuffle(flat)
        flat = flat[:max_facts]
        facts = {name: [t for r, t in flat if r == name] for name in sig.names}
    return Structure(sig, dom, facts)


def random_graph(seed, vertices=(2, 5), density=0.35, loops=True) -> Structure:
    rng = _rng(seed)
    n = rng.randint(*vertices) if isinstance(vertices, tuple) else vertices
    dom = [f"a{i}" for i in range(n)]
    edges = [(x, y) for x in dom for y in dom
             if (loops or x != y) and rng.random() < density]
    return Structure(GRAPH_SIGNATURE, dom, {"E": edges})


def random_hypergraph(seed, vertices=5, edges=6, max_edge=None) -> Hypergraph:
    """``edges`` random nonempty edges (duplicates collapse) on ``vertices``
    vertices named ``v0, v1, ...``; vertices in no edge stay isolated."""
    rng = _rng(seed)
    verts = [f"v{i}" for i in range(vertices)]
    top = min(vertices, max_edge or vertices)
    sets = []
    for _ in range(edges):
        k = rng.randint(1, top)
        sets.append(frozenset(rng.sample(verts, k)))
    return Hypergraph.from_sets(sets, vertices=verts)


def random_reduced_hypergraph(seed, vertices=(2, 7), edges=(2, 7), max_edge=None) -> Hypergraph:
    rng = _rng(seed)
    while True:
        h = reduce(random_hypergraph(rng, rng.randint(*vertices), rng.randint(*edges), max_edge))
        if h.edges:
            return h


def hypergraph_structure(h: Hypergraph, relation: str = "R") -> Structure:
    """A structure with one relation per edge arity whose hypergraph is ``h``."""
    facts = {}
    for e in h.edges.values():
        facts.setdefault(f"{relation}{len(e)}", []).append(tuple(sorted(e)))
    sig = Signature(tuple((n, len(ts[0])) for n, ts in facts.items()))
    return Structure(sig, h.vertices, facts)


def random_ghd_with_scv(seed, vertices=(3, 6), edges=(3, 6), tries=200):
    """A structure and a GHD of its hypergraph with at least one special
    condition violation.

    Bags come from a random elimination ordering; each bag is covered
    greedily, preferring edges that stick out of the bag.
    """
    from .decomp import CoveredDecomposition, scv_list, td_from_order
    from .model import hypergraph_of

    rng = _rng(seed)
    for _ in range(tries):
        h = random_hypergraph(rng, rng.randint(*vertices), rng.randint(*edges), max_edge=3)
        a = hypergraph_structure(h)
        h = hypergraph_of(a)
        order = [v for v in h.vertices if v not in set(h.isolated())]
        if not order:
            continue
        rng.shuffle(order)
        td = td_from_order(h, order)
        covers = []
        for bag in td.bags:
            chosen, left = set(), set(bag)
            while left:
                v = rng.choice(sorted(left))
                options = sorted(n for n, e in h.edges.items() if v in e)
                options.sort(key=lambda n: -len(h.edges[n] - bag))
                pick = options[0] if rng.random() < 0.7 else rng.choice(options)
                chosen.add(pick)
                left -= h.edges[pick]
            covers.append(frozenset(chosen))
        d = CoveredDecomposition(td, tuple(covers))
        if scv_list(h, d):
            return a, d
    raise RuntimeError("no GHD with a special condition violation found")
