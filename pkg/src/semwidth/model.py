"""Relational structures, hypergraphs and their text formats.

Everything here is immutable once built. Element, vertex and edge names are
plain strings and every collection is kept in lexicographic order so that
all derived output is deterministic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (ArityMismatch, ParseError, SignatureMismatch,
                     UnknownVertex)

Fact = tuple  # tuple[str, ...]

_FACT_RE = re.compile(r"^\s*([A-Za-z0-9_]+)\s*\((.*)\)\s*\.\s*$")
_CONST_RE = re.compile(r"^[A-Za-z0-9_@]+$")


@dataclass(frozen=True)
class Signature:
    """Relation symbols with arities, sorted by name."""

    symbols: tuple  # tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple(sorted((str(n), int(a)) for n, a in self.symbols))
        names = [n for n, _ in symbols]
        if len(set(names)) != len(names):
            raise SignatureMismatch(f"duplicate relation name in {names}")
        for n, a in symbols:
            if a < 1:
                raise SignatureMismatch(f"relation {n!r} has arity {a} < 1")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def of(cls, value) -> "Signature":
        if isinstance(value, Signature):
            return value
        if isinstance(value, Mapping):
            return cls(tuple(value.items()))
        return cls(tuple(value))

    @property
    def names(self):
        return tuple(n for n, _ in self.symbols)

    def arity(self, name):
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)

    def __contains__(self, name):
        return any(n == name for n, _ in self.symbols)

    def __len__(self):
        return len(self.symbols)

    def union(self, other: "Signature") -> "Signature":
        merged = dict(self.symbols)
        for n, a in other.symbols:
            if merged.get(n, a) != a:
                raise SignatureMismatch(
                    f"relation {n!r} has arity {merged[n]} and {a}")
            merged[n] = a
        return Signature(tuple(merged.items()))


class Structure:
    """A finite relational structure.

    ``facts`` maps each relation name of the signature to a frozenset of
    tuples. Relations absent from ``facts`` are empty.
    """

    __slots__ = ("signature", "domain", "_facts", "_key")

    def __init__(self, signature, domain: Iterable[str],
                 facts: Mapping[str, Iterable[Fact]] | None = None):
        signature = Signature.of(signature)
        dom = tuple(sorted(set(domain)))
        domset = set(dom)
        table = {}
        facts = facts or {}
        for name in facts:
            if name not in signature:
                raise SignatureMismatch(
                    f"relation {name!r} not in signature {signature.names}")
        for name, arity in signature.symbols:
            tuples = frozenset(tuple(t) for t in facts.get(name, ()))
            for t in tuples:
                if len(t) != arity:
                    raise ArityMismatch(name, arity, len(t))
                for x in t:
                    if x not in domset:
                        raise UnknownVertex(
                            f"element {x!r} of {name}{t} not in domain")
            table[name] = tuples
        self.signature = signature
        self.domain = dom
        self._facts = MappingProxyType(table)
        self._key = (signature, dom,
                     tuple((n, tuple(sorted(table[n]))) for n in signature.names))

    @classmethod
    def from_facts(cls, facts: Iterable[tuple[str, Fact]], signature=None,
                   domain: Iterable[str] = ()) -> "Structure":
        """Build a structure from ``(relation, tuple)`` pairs.

        The signature is inferred unless given; the domain is the given
        elements plus everything occurring in a fact.
        """
        facts = [(r, tuple(t)) for r, t in facts]
        arities = {} if signature is None else dict(Signature.of(signature).symbols)
        grouped = {n: set() for n in arities}
        dom = set(domain)
        for r, t in facts:
            if r not in arities:
                if signature is not None:
                    raise SignatureMismatch(f"relation {r!r} not in signature")
                arities[r] = len(t)
            if len(t) != arities[r]:
                raise ArityMismatch(r, arities[r], len(t))
            grouped.setdefault(r, set()).add(t)
            dom.update(t)
        return cls(Signature(tuple(arities.items())), dom, grouped)

    @property
    def relations(self) -> Mapping[str, frozenset]:
        return self._facts

    def facts(self, name: str) -> frozenset:
        return self._facts[name]

    def all_facts(self):
        """All ``(relation, tuple)`` pairs in lexicographic order."""
        return [(n, t) for n in self.signature.names
                for t in sorted(self._facts[n])]

    @property
    def num_facts(self) -> int:
        return sum(len(v) for v in self._facts.values())

    def with_signature(self, signature) -> "Structure":
        signature = Signature.of(signature)
        for n, a in self.signature.symbols:
            if n not in signature or signature.arity(n) != a:
                if self._facts[n]:
                    raise SignatureMismatch(
                        f"relation {n!r} cannot be dropped or re-aritied")
        return Structure(signature, self.domain,
                         {n: v for n, v in self._facts.items() if n in signature})

    def induced(self, elements: Iterable[str]) -> "Structure":
        keep = set(elements)
        return Structure(self.signature, keep,
                         {n: [t for t in ts if set(t) <= keep]
                          for n, ts in self._facts.items()})

    def rename(self, mapping: Mapping[str, str]) -> "Structure":
        """Image of the structure under ``mapping`` (need not be injective)."""
        return Structure(self.signature, (mapping[x] for x in self.domain),
                         {n: [tuple(mapping[x] for x in t) for t in ts]
                          for n, ts in self._facts.items()})

    def add_facts(self, new: Iterable[tuple[str, Fact]]) -> "Structure":
        table = {n: set(ts) for n, ts in self._facts.items()}
        dom = set(self.domain)
        for r, t in new:
            table[r].add(tuple(t))
            dom.update(t)
        return Structure(self.signature, dom, table)

    def __eq__(self, other):
        return isinstance(other, Structure) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = ", ".join(f"{r}({','.join(t)})" for r, t in self.all_facts())
        return f"Structure({{{body}}}, domain={list(self.domain)})"


def check_same_signature(a: Structure, b: Structure):
    if a.signature != b.signature:
        raise SignatureMismatch(
            f"signatures differ: {a.signature.symbols} vs {b.signature.symbols}")


def align_signatures(*structures: Structure):
    """Extend every structure to the union signature (empty new relations)."""
    sig = structures[0].signature
    for s in structures[1:]:
        sig = sig.union(s.signature)
    return tuple(s.with_signature(sig) for s in structures)


def edge_name(vertices: Iterable[str]) -> str:
    return "_".join(sorted(vertices))


class Hypergraph:
    """Named vertices and named, nonempty edges."""

    __slots__ = ("vertices", "_edges", "_key")

    def __init__(self, vertices: Iterable[str], edges: Mapping[str, Iterable[str]]):
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        table = {}
        for name in sorted(edges):
            e = frozenset(edges[name])
            if not e:
                raise ValueError(f"edge {name!r} is empty")
            missing = e - vset
            if missing:
                raise UnknownVertex(
                    f"edge {name!r} uses unknown vertices {sorted(missing)}")
            table[name] = e
        self.vertices = verts
        self._edges = MappingProxyType(table)
        self._key = (verts, tuple((n, tuple(sorted(e))) for n, e in table.items()))

    @classmethod
    def from_sets(cls, edge_sets: Iterable[Iterable[str]],
                  vertices: Iterable[str] = ()) -> "Hypergraph":
        """Hypergraph whose edges are the given sets, named canonically."""
        sets = {frozenset(e) for e in edge_sets}
        sets.discard(frozenset())
        verts = set(vertices).union(*sets) if sets else set(vertices)
        return cls(verts, _name_edges(sets))

    @property
    def edges(self) -> Mapping[str, frozenset]:
        return self._edges

    @property
    def edge_sets(self) -> frozenset:
        return frozenset(self._edges.values())

    @property
    def rank(self) -> int:
        return max((len(e) for e in self._edges.values()), default=0)

    def incident(self, v: str) -> list[str]:
        return [n for n, e in self._edges.items() if v in e]

    def isolated(self) -> list[str]:
        covered = set().union(*self._edges.values()) if self._edges else set()
        return [v for v in self.vertices if v not in covered]

    def neighbours(self) -> dict:
        """Primal-graph adjacency."""
        adj = {v: set() for v in self.vertices}
        for e in self._edges.values():
            for v in e:
                adj[v] |= e
        for v in adj:
            adj[v].discard(v)
        return adj

    def __eq__(self, other):
        return isinstance(other, Hypergraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = ", ".join(f"{n}:{{{','.join(sorted(e))}}}" for n, e in self._edges.items())
        return f"Hypergraph(V={list(self.vertices)}, E={{{body}}})"


def _name_edges(sets) -> dict:
    """Canonical edge names; aliasing names get a ``__<k>`` suffix."""
    by_name = {}
    for e in sorted(sets, key=lambda s: sorted(s)):
        by_name.setdefault(edge_name(e), []).append(e)
    out = {}
    for name, group in by_name.items():
        if len(group) == 1:
            out[name] = group[0]
        else:
            for k, e in enumerate(group, 1):
                out[f"{name}__{k}"] = e
    return out


@dataclass(frozen=True)
class Instance:
    left: Structure
    right: Structure

    def __post_init__(self):
        check_same_signature(self.left, self.right)


def hypergraph_of(s: Structure) -> Hypergraph:
    """H(A): one edge per distinct element set of a fact."""
    return Hypergraph.from_sets((frozenset(t) for _, t in s.all_facts()),
                                vertices=s.domain)


def structure_size(s: Structure) -> int:
    return (len(s.signature) + len(s.domain)
            + sum(len(s.facts(n)) * a for n, a in s.signature.symbols))


def induced_subhypergraph(h: Hypergraph, u: Iterable[str]) -> Hypergraph:
    u = set(u)
    unknown = u - set(h.vertices)
    if unknown:
        raise UnknownVertex(f"vertices {sorted(unknown)} not in hypergraph")
    return Hypergraph.from_sets((e & u for e in h.edges.values()), vertices=u)


def gen_grid_instance(n: int, g: Structure) -> Instance:
    """The bidirected n x n grid as scopes, with ``g`` as the data."""
    if n < 1:
        raise ValueError("grid size must be >= 1")
    if g.signature != Signature((("E", 2),)):
        raise SignatureMismatch("grid data must have signature {E/2}")

    def x(i, j):
        return f"x_{i}_{j}"

    tuples = []
    for i in range(1, n):
        for j in range(1, n + 1):
            tuples += [(x(i, j), x(i + 1, j)), (x(i + 1, j), x(i, j))]
    for i in range(1, n + 1):
        for j in range(1, n):
            tuples += [(x(i, j), x(i, j + 1)), (x(i, j + 1), x(i, j))]
    dom = [x(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return Instance(Structure(g.signature, dom, {"E": tuples}), g)


# -- text formats -----------------------------------------------------------

def _parse_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _FACT_RE.match(line)
        if not m:
            raise ParseError(f"cannot parse {line!r}", lineno)
        args = [a.strip() for a in m.group(2).split(",")]
        for a in args:
            if not _CONST_RE.match(a):
                raise ParseError(f"bad constant {a!r}", lineno)
        yield lineno, m.group(1), tuple(args)


def parse_structure(text: str, signature=None) -> Structure:
    facts = []
    arities = {} if signature is None else dict(Signature.of(signature).symbols)
    for lineno, rel, args in _parse_lines(text):
        if rel in arities and arities[rel] != len(args):
            raise ArityMismatch(rel, arities[rel], len(args))
        if rel not in arities and signature is not None:
            raise ParseError(f"relation {rel!r} not in signature", lineno)
        arities[rel] = len(args)
        facts.append((rel, args))
    return Structure.from_facts(facts, signature=Signature(tuple(arities.items())))


def serialize_structure(s: Structure) -> str:
    return "".join(f"{r}({','.join(t)}).\n" for r, t in s.all_facts())


def parse_hypergraph(text: str) -> Hypergraph:
    edges = {}
    for lineno, name, args in _parse_lines(text):
        if name in edges:
            raise ParseError(f"duplicate edge name {name!r}", lineno)
        edges[name] = set(args)
    verts = set().union(*edges.values()) if edges else set()
    return Hypergraph(verts, edges)


def serialize_hypergraph(h: Hypergraph) -> str:
    return "".join(f"{n}({','.join(sorted(e))}).\n" for n, e in h.edges.items())
