"""Edge covers, transversals, duality, integrality gaps and VC dimension."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (NotAHomomorphism, NotReduced, ParseError,
                     UncoverableVertex, UnknownVertex)
from .lp import covering_lp
from .model import Hypergraph, induced_subhypergraph


@dataclass(frozen=True)
class FractionalCover:
    weights: Mapping[str, Fraction]
    total: Fraction

    @classmethod
    def from_weights(cls, weights: Mapping[str, Fraction]) -> "FractionalCover":
        w = {k: Fraction(v) for k, v in sorted(weights.items())}
        if any(v < 0 for v in w.values()):
            raise ValueError("negative cover weight")
        return cls(w, sum(w.values(), Fraction(0)))

    def covers(self, h: Hypergraph, x: Iterable[str]) -> bool:
        return all(sum((self.weights.get(n, 0) for n in h.incident(v)), Fraction(0)) >= 1
                   for v in x)


def _check_coverable(h: Hypergraph, x) -> set:
    x = set(x)
    unknown = x - set(h.vertices)
    if unknown:
        raise UnknownVertex(f"vertices {sorted(unknown)} not in hypergraph")
    covered = set().union(*h.edges.values()) if h.edges else set()
    for v in sorted(x):
        if v not in covered:
            raise UncoverableVertex(v)
    return x


def min_set_cover(universe: set, sets: Mapping[str, frozenset]) -> frozenset:
    """Minimum number of named sets whose union contains ``universe``.

    Branch and bound: branch on the uncovered element with fewest options,
    trying sets by decreasing coverage, bounded by a counting argument.
    Assumes every element of the universe lies in some set.
    """
    universe = set(universe)
    if not universe:
        return frozenset()
    sets = {n: s & universe for n, s in sets.items() if s & universe}
    containing = {u: sorted(n for n, s in sets.items() if u in s) for u in universe}
    biggest = max(len(s) for s in sets.values())

    # greedy start
    best = []
    left = set(universe)
    while left:
        n = max(sorted(sets), key=lambda k: len(sets[k] & left))
        best.append(n)
        left -= sets[n]
    best = list(best)

    def search(chosen, left):
        nonlocal best
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + math.ceil(len(left) / biggest) >= len(best):
            return
        u = min(left, key=lambda v: (len(containing[v]), v))
        options = sorted(containing[u], key=lambda n: (-len(sets[n] & left), n))
        for n in options:
            chosen.append(n)
            search(chosen, left - sets[n])
            chosen.pop()

    search([], universe)
    return frozenset(best)


def integral_cover(h: Hypergraph, x: Iterable[str]) -> tuple[int, frozenset]:
    """rho_H(x): smallest number of edges covering ``x``."""
    x = _check_coverable(h, x)
    chosen = min_set_cover(x, h.edges)
    return len(chosen), chosen


def fractional_cover(h: Hypergraph, x: Iterable[str]) -> FractionalCover:
    """rho*_H(x) with an optimal weighting, computed exactly."""
    x = _check_coverable(h, x)
    names = list(h.edges)
    rows = [{j for j, n in enumerate(names) if v in h.edges[n]} for v in sorted(x)]
    _, weights = covering_lp(rows, len(names))
    return FractionalCover.from_weights(dict(zip(names, weights)))


def rho(h: Hypergraph) -> int:
    return integral_cover(h, set(h.vertices) - set(h.isolated()))[0]


def rho_star(h: Hypergraph) -> Fraction:
    return fractional_cover(h, set(h.vertices) - set(h.isolated())).total


def pushforward_cover(g: Hypergraph, h: Hypergraph, f: Mapping[str, str],
                      x: FractionalCover) -> FractionalCover:
    """Push a cover of ``g`` along the hypergraph homomorphism ``f: g -> h``.

    Each edge of ``h`` receives the summed weight of its preimage edges.
    When several edges of ``h`` share a vertex set, the least name is used.
    """
    missing = set(g.vertices) - set(f)
    if missing:
        raise NotAHomomorphism(f"mapping undefined on {sorted(missing)}")
    if not set(f[v] for v in g.vertices) <= set(h.vertices):
        raise NotAHomomorphism("mapping leaves the target vertex set")
    name_of = {}
    for n, e in h.edges.items():
        name_of.setdefault(e, n)
    out = {n: Fraction(0) for n in h.edges}
    for n, e in g.edges.items():
        image = frozenset(f[v] for v in e)
        if image not in name_of:
            raise NotAHomomorphism(
                f"edge {n} = {sorted(e)} maps to {sorted(image)}, not an edge")
        out[name_of[image]] += x.weights.get(n, Fraction(0))
    return FractionalCover.from_weights(out)


# -- reduced hypergraphs and duality ----------------------------------------

def reduction_violations(h: Hypergraph) -> list[str]:
    problems = []
    for v in h.isolated():
        problems.append(f"isolated vertex {v}")
    seen = {}
    for n, e in h.edges.items():
        if e in seen:
            problems.append(f"duplicate edge-type: {seen[e]} and {n}")
        else:
            seen[e] = n
    types = {}
    for v in h.vertices:
        t = frozenset(h.incident(v))
        if t and t in types:
            problems.append(f"duplicate vertex-type: {types[t]} and {v}")
        elif t:
            types[t] = v
    return problems


def is_reduced(h: Hypergraph) -> bool:
    return not reduction_violations(h)


def reduce(h: Hypergraph) -> Hypergraph:
    """Drop isolated vertices and duplicate edges; merge twin vertices into
    the lexicographically least representative."""
    edges = {}
    seen = set()
    for n, e in h.edges.items():
        if e not in seen:
            seen.add(e)
            edges[n] = e
    rep = {}
    by_type = {}
    for v in h.vertices:
        t = frozenset(n for n, e in edges.items() if v in e)
        if not t:
            continue
        rep[v] = by_type.setdefault(t, v)
    return Hypergraph(set(rep.values()),
                      {n: {rep[v] for v in e} for n, e in edges.items()})


def dual(h: Hypergraph) -> Hypergraph:
    problems = reduction_violations(h)
    if problems:
        raise NotReduced("; ".join(problems))
    return Hypergraph(h.edges.keys(), {v: h.incident(v) for v in h.vertices})


def transversality(h: Hypergraph):
    """(tau, tau*, (minimum hitting set, optimal fractional weights))."""
    if not h.edges:
        return 0, Fraction(0), (frozenset(), {})
    verts = list(h.vertices)
    hitting = min_set_cover(set(h.edges),
                            {v: frozenset(h.incident(v)) for v in verts})
    rows = [{j for j, v in enumerate(verts) if v in e} for e in h.edges.values()]
    tau_star, w = covering_lp(rows, len(verts))
    return len(hitting), tau_star, (hitting, dict(zip(verts, w)))


@dataclass(frozen=True)
class GapReport:
    rho: int
    rho_star: Fraction
    tau: int
    tau_star: Fraction
    cigap: Fraction
    tigap_of_dual: Fraction


def gap_report(h: Hypergraph) -> GapReport:
    if not is_reduced(h):
        raise NotReduced("; ".join(reduction_violations(h)))
    r = rho(h)
    rs = rho_star(h)
    tau, tau_star, _ = transversality(h)
    dtau, dtau_star, _ = transversality(dual(h))
    cigap = Fraction(r) / rs
    tigap_dual = Fraction(dtau) / dtau_star
    assert cigap == tigap_dual, (cigap, tigap_dual)
    return GapReport(r, rs, tau, tau_star, cigap, tigap_dual)


def ding_bound(vc: int, rho_star_value) -> float:
    """Approximate upper bound max(1, 2^(vc+2) * log2(11 rho*)) on cigap."""
    return max(1.0, 2 ** (vc + 2) * math.log2(11 * float(rho_star_value)))


# -- VC dimension and exotic witnesses ---------------------------------------

def is_shattered(h: Hypergraph, x: Iterable[str]) -> bool:
    x = frozenset(x)
    traces = {x & e for e in h.edges.values()}
    return len(traces) == 2 ** len(x)


def vc_dimension(h: Hypergraph) -> tuple[int, frozenset]:
    """Largest shattered vertex set (0 with the empty witness if none)."""
    best = frozenset()
    for k in range(1, len(h.vertices) + 1):
        found = next((frozenset(c) for c in combinations(h.vertices, k)
                      if is_shattered(h, c)), None)
        if found is None:
            break
        best = found
    return len(best), best


def exotic_witness(h: Hypergraph, n: int) -> frozenset | None:
    """An n-set U whose induced subhypergraph has >= 2^n - 1 edges."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for u in combinations(h.vertices, n):
        if len(induced_subhypergraph(h, u).edges) >= 2 ** n - 1:
            return frozenset(u)
    return None


# -- text format --------------------------------------------------------------

def format_cover(c: FractionalCover) -> str:
    def q(v):
        v = Fraction(v)
        return f"{v.numerator}/{v.denominator}"
    lines = [f"{n} {q(w)}" for n, w in c.weights.items()]
    lines.append(f"total {q(c.total)}")
    return "\n".join(lines) + "\n"


def parse_cover(text: str) -> FractionalCover:
    weights = {}
    total = None
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'name p/q', got {line!r}", lineno)
        try:
            value = Fraction(parts[1])
        except ValueError:
            raise ParseError(f"bad weight {parts[1]!r}", lineno) from None
        if parts[0] == "total":
            total = value
        else:
            weights[parts[0]] = value
    cover = FractionalCover.from_weights(weights)
    if total is not None and total != cover.total:
        raise ParseError(f"total {total} does not match weights ({cover.total})")
    return cover
