"""Homomorphism search, containment, equivalence, isomorphism and cores."""
from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable

from .errors import ParseError
from .model import Structure, check_same_signature


class _Target:
    """Projection indexes over the facts of the target structure."""

    def __init__(self, b: Structure):
        self.b = b
        self._index = {}

    def supports(self, rel, positions, values):
        key = (rel, positions)
        idx = self._index.get(key)
        if idx is None:
            idx = {tuple(t[p] for p in positions) for t in self.b.facts(rel)}
            self._index[key] = idx
        return values in idx


def _search_order(a: Structure):
    incident = Counter()
    for _, t in a.all_facts():
        for x in set(t):
            incident[x] += 1
    return sorted(a.domain, key=lambda x: (-incident[x], x))


def _profile(s: Structure):
    prof = defaultdict(Counter)
    for rel, t in s.all_facts():
        for i, x in enumerate(t):
            prof[x][(rel, i)] += 1
    return {x: tuple(sorted(prof[x].items())) for x in s.domain}


def _backtrack(a: Structure, b: Structure, candidates: dict, injective=False):
    order = _search_order(a)
    facts_of = defaultdict(list)
    for rel, t in a.all_facts():
        for x in set(t):
            facts_of[x].append((rel, t))
    target = _Target(b)
    assignment = {}
    used = set()

    def consistent(x):
        for rel, t in facts_of[x]:
            positions = tuple(i for i, y in enumerate(t) if y in assignment)
            values = tuple(assignment[t[i]] for i in positions)
            if not target.supports(rel, positions, values):
                return False
        return True

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for v in candidates[x]:
            if injective and v in used:
                continue
            assignment[x] = v
            if consistent(x):
                used.add(v)
                if extend(i + 1):
                    return True
                used.discard(v)
            del assignment[x]
        return False

    if extend(0):
        return dict(sorted(assignment.items()))
    return None


def find_homomorphism(a: Structure, b: Structure,
                      forbid: Iterable[tuple[str, str]] = ()) -> dict | None:
    """A homomorphism ``a -> b`` avoiding the ``(source, target)`` pairs in
    ``forbid``, or ``None``.

    Values are tried in lexicographic order along a fail-first variable
    order, so the returned mapping is the least one under that order.
    """
    check_same_signature(a, b)
    banned = defaultdict(set)
    for x, y in forbid:
        banned[x].add(y)
    candidates = {x: [v for v in b.domain if v not in banned[x]] for x in a.domain}
    return _backtrack(a, b, candidates)


def is_homomorphism(a: Structure, b: Structure, h: dict) -> bool:
    if set(h) != set(a.domain) or not set(h.values()) <= set(b.domain):
        return False
    return all(tuple(h[x] for x in t) in b.facts(rel) for rel, t in a.all_facts())


def is_contained(a: Structure, a2: Structure) -> bool:
    """True iff every B solving (a, B) also solves (a2, B)."""
    return find_homomorphism(a2, a) is not None


def hom_equivalent(a: Structure, a2: Structure) -> bool:
    return (find_homomorphism(a, a2) is not None
            and find_homomorphism(a2, a) is not None)


def find_isomorphism(a: Structure, a2: Structure) -> dict | None:
    check_same_signature(a, a2)
    if len(a.domain) != len(a2.domain):
        return None
    if any(len(a.facts(n)) != len(a2.facts(n)) for n in a.signature.names):
        return None
    pa, pb = _profile(a), _profile(a2)
    if sorted(pa.values()) != sorted(pb.values()):
        return None
    candidates = {x: [v for v in a2.domain if pb[v] == pa[x]] for x in a.domain}
    # An injective hom between structures with equal fact counts maps facts
    # onto facts, so its inverse is a homomorphism as well.
    return _backtrack(a, a2, candidates, injective=True)


def is_isomorphic(a: Structure, a2: Structure) -> bool:
    return find_isomorphism(a, a2) is not None


def core(a: Structure) -> tuple[Structure, dict]:
    """The core of ``a`` and a retraction onto it.

    Returns ``(c, f)`` with ``c`` an induced substructure of ``a`` and ``f``
    an endomorphism of ``a`` whose image is ``c`` and which fixes every
    element of ``c``.
    """
    current = a
    f = {x: x for x in a.domain}
    while True:
        for x in current.domain:
            g = find_homomorphism(current, current,
                                  forbid=((y, x) for y in current.domain))
            if g is not None:
                break
        else:
            break
        current = current.induced(set(g.values()))
        f = {v: g[w] for v, w in f.items()}
    # f restricted to the core is an automorphism; undo it so f fixes the core
    inverse = {f[v]: v for v in current.domain}
    f = {v: inverse[w] for v, w in f.items()}
    return current, dict(sorted(f.items()))


def format_mapping(h: dict) -> str:
    return "".join(f"{x} -> {y}\n" for x, y in sorted(h.items()))


def parse_mapping(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise ParseError(f"expected 'x -> y', got {line!r}", lineno)
        out[parts[0].strip()] = parts[1].strip()
    return out
