"""Star expansion and the reduction from hypergraph-level CSPs to CSPs over
a fixed structure with that hypergraph."""
from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping

from .errors import HypergraphMismatch, NameCollision, NotAnEdge
from .model import Instance, Signature, Structure, hypergraph_of

PAIR_SEP = "@"


def star_expand(a: Structure) -> Structure:
    """Add a unary relation ``U_x = {x}`` for every element ``x``."""
    new = {f"U_{x}": x for x in a.domain}
    clash = sorted(set(new) & set(a.signature.names))
    if clash:
        raise NameCollision(f"relations {clash} already exist")
    sig = Signature(a.signature.symbols + tuple((n, 1) for n in new))
    facts = dict(a.relations)
    facts.update({n: [(x,)] for n, x in new.items()})
    return Structure(sig, a.domain, facts)


def satisfying_assignments(c: Structure, d: Structure, e: Iterable[str]) -> list[dict]:
    """F_e: maps e -> dom(d) satisfying every fact of c whose element set is e."""
    e = frozenset(e)
    if e not in hypergraph_of(c).edge_sets:
        raise NotAnEdge(f"{sorted(e)} is not an edge of H(c)")
    scopes = [(r, t) for r, t in c.all_facts() if frozenset(t) == e]
    order = sorted(e)
    out = []
    for values in product(d.domain, repeat=len(order)):
        f = dict(zip(order, values))
        if all(tuple(f[x] for x in t) in d.facts(r) for r, t in scopes):
            out.append(f)
    return out


def pair(x: str, delta: str) -> str:
    return f"{x}{PAIR_SEP}{delta}"


def unpair(name: str) -> tuple[str, str]:
    x, _, delta = name.partition(PAIR_SEP)
    return x, delta


def redh_reduce(c: Structure, d: Structure, a: Structure,
                identification: Mapping[str, str] | None = None) -> Instance:
    """Reduce (c, d) to (a*, B) where H(a) and H(c) coincide.

    ``identification`` maps elements of ``a`` to elements of ``c``; when
    omitted the names must agree. Relations of ``c`` and ``a`` may differ:
    only the hypergraph is shared.
    """
    ident = dict(identification) if identification is not None else {x: x for x in a.domain}
    if sorted(ident) != list(a.domain) or sorted(ident.values()) != list(c.domain) \
            or len(set(ident.values())) != len(ident):
        raise HypergraphMismatch("identification must be a bijection dom(a) -> dom(c)")
    ha, hc = hypergraph_of(a), hypergraph_of(c)
    mapped = {frozenset(ident[x] for x in e) for e in ha.edge_sets}
    if mapped != set(hc.edge_sets):
        raise HypergraphMismatch("H(a) and H(c) differ under the identification")

    star = star_expand(a)
    f_e = {}
    b_facts = {n: set() for n in star.signature.names}
    for rel, t in a.all_facts():
        e = frozenset(ident[x] for x in t)
        if e not in f_e:
            f_e[e] = satisfying_assignments(c, d, e)
        for f in f_e[e]:
            b_facts[rel].add(tuple(pair(x, f[ident[x]]) for x in t))
    for x in a.domain:
        b_facts[f"U_{x}"] = {(pair(x, delta),) for delta in d.domain}
    dom_b = [pair(x, delta) for x in a.domain for delta in d.domain]
    return Instance(star, Structure(star.signature, dom_b, b_facts))


def extract_solution(g: Mapping[str, str], identification: Mapping[str, str] | None = None) -> dict:
    """Recover h: dom(c) -> dom(d) from a solution g: x -> (x, h(x))."""
    out = {}
    for x, image in g.items():
        y, delta = unpair(image)
        if y != x:
            raise ValueError(f"{x} mapped to {image}, not of the form {x}@...")
        out[identification[x] if identification else x] = delta
    return dict(sorted(out.items()))
