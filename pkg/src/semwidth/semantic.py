"""Semantic widths through the core, and repair of special condition
violations by adding homomorphically redundant facts."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .covers import rho_star
from .decomp import (CoveredDecomposition, Limits, TreeDecomposition,
                     exact_width, ghd_from_td, scv_list, subw_bounds)
from .hom import core
from .model import Structure, hypergraph_of

SEMANTIC_KINDS = ("rho-star", "fhw", "ghw", "tw", "subw-bounds")


def structure_width(a: Structure, kind: str, limits: Limits | None = None):
    """Plain width of the hypergraph of ``a``."""
    h = hypergraph_of(a)
    if kind == "rho-star":
        return rho_star(h)
    if kind == "subw-bounds":
        return subw_bounds(h, limits)
    if kind in ("fhw", "ghw", "tw"):
        return exact_width(h, kind, limits)[0]
    raise ValueError(f"unknown width kind {kind!r}")


def semantic_width(a: Structure, kind: str, limits: Limits | None = None):
    """(width of the core's hypergraph, core).

    For ``subw-bounds`` the value is an interval ``(lower, upper)``.
    """
    c, _ = core(a)
    return structure_width(c, kind, limits), c


def scv_repair_steps(a: Structure, d: CoveredDecomposition) -> Iterator[tuple]:
    """Yield ``(structure, decomposition, scvs)`` before each repair step and
    once more at the end (with an empty violation list)."""
    counter = 0
    used = set(a.domain)
    while True:
        h = hypergraph_of(a)
        scvs = scv_list(h, d)
        yield a, d, scvs
        if not scvs:
            return
        rec = scvs[0]
        u = rec.node
        target = h.edges[rec.edge]
        rel, t = min((r, t) for r, t in a.all_facts() if frozenset(t) == target)
        fresh = {}
        for v in sorted(target - d.base.bags[u]):
            counter += 1
            while f"_scv{counter}" in used:
                counter += 1
            fresh[v] = f"_scv{counter}"
            used.add(fresh[v])
        new_fact = tuple(fresh.get(x, x) for x in t)
        a2 = a.add_facts([(rel, new_fact)])
        h2 = hypergraph_of(a2)
        name_of = {e: n for n, e in sorted(h2.edges.items(), reverse=True)}

        def rename(names):
            return frozenset(name_of[h.edges[n]] for n in names)

        covers = [rename(c) for c in d.covers]
        covers[u] = (covers[u] - {name_of[target]}) | {name_of[frozenset(new_fact)]}
        bags = list(d.base.bags)
        bags[u] = bags[u] | frozenset(fresh.values())
        d = CoveredDecomposition(TreeDecomposition(tuple(bags), d.base.parent),
                                 tuple(covers))
        a = a2


def scv_repair(a: Structure, d: CoveredDecomposition) -> tuple[Structure, CoveredDecomposition]:
    """Turn a GHD of H(a) into an HD of H(a') for some a' equivalent to a,
    keeping the width."""
    for a2, d2, scvs in scv_repair_steps(a, d):
        if not scvs:
            return a2, d2
    raise AssertionError("unreachable")


def semantic_hw(a: Structure, limits: Limits | None = None):
    """(semantic hw, (equivalent structure, HD of that width))."""
    c, _ = core(a)
    hc = hypergraph_of(c)
    value, td = exact_width(hc, "ghw", limits)
    a2, d2 = scv_repair(c, ghd_from_td(hc, td))
    return int(value), (a2, d2)


def semantic_subw_interval(a: Structure, limits: Limits | None = None) -> tuple[Fraction, Fraction]:
    return semantic_width(a, "subw-bounds", limits)[0]
