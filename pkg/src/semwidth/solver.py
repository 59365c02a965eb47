"""CSP decision procedures: a plain brute-force oracle and evaluation along
a tree decomposition with bottom-up semijoins."""
from __future__ import annotations

from dataclasses import dataclass, field

from .covers import integral_cover
from .decomp import Limits, TreeDecomposition, exact_width
from .hom import core
from .model import Structure, check_same_signature, hypergraph_of


def solve_bruteforce(a: Structure, b: Structure) -> tuple[bool, dict | None]:
    """Exhaustive backtracking in domain order; a fact is checked as soon as
    all of its elements are assigned."""
    check_same_signature(a, b)
    order = list(a.domain)
    pos = {x: i for i, x in enumerate(order)}
    due = [[] for _ in order]
    for rel, t in a.all_facts():
        due[max(pos[x] for x in t)].append((rel, t))
    h = {}

    def go(i):
        if i == len(order):
            return True
        for v in b.domain:
            h[order[i]] = v
            if all(tuple(h[x] for x in t) in b.facts(rel) for rel, t in due[i]):
                if go(i + 1):
                    return True
        h.pop(order[i], None)
        return False

    if go(0):
        return True, dict(h)
    return False, None


@dataclass
class DecomposedRun:
    result: bool
    structure: Structure
    decomposition: TreeDecomposition | None = None
    bag_rows: list = field(default_factory=list)  # rows per node after materialization

    @property
    def max_rows(self) -> int:
        return max(self.bag_rows, default=0)


def _edge_rows(rel, t, b: Structure):
    """Assignments to the elements of fact ``t`` induced by tuples of R^b."""
    rows = []
    for s in b.facts(rel):
        f = {}
        ok = True
        for x, v in zip(t, s):
            if f.setdefault(x, v) != v:
                ok = False
                break
        if ok:
            rows.append(f)
    return rows


def _join(left: list[dict], right: list[dict]) -> list[dict]:
    out = []
    for l in left:
        for r in right:
            if all(l[k] == r[k] for k in l.keys() & r.keys()):
                out.append({**l, **r})
    return out


def run_decomposed(a: Structure, b: Structure, use_core: bool = True,
                   limits: Limits | None = None) -> DecomposedRun:
    check_same_signature(a, b)
    if use_core:
        a, _ = core(a)
    h = hypergraph_of(a)
    if h.isolated() and not b.domain:
        return DecomposedRun(False, a)
    if not h.edges:
        return DecomposedRun(True, a)
    _, td = exact_width(h, "ghw", limits)
    facts = a.all_facts()
    relations = []
    for bag in td.bags:
        cols = sorted(bag)
        _, cover = integral_cover(h, bag)
        rows = [{}]
        for name in sorted(cover):
            e = h.edges[name]
            rel, t = min((r, t) for r, t in facts if frozenset(t) == e)
            rows = _join(rows, _edge_rows(rel, t, b))
        inside = [(r, t) for r, t in facts if set(t) <= bag]
        table = set()
        for f in rows:
            if all(tuple(f[x] for x in t) in b.facts(r) for r, t in inside):
                table.add(tuple(f[c] for c in cols))
        relations.append((cols, table))
    run = DecomposedRun(False, a, td, [len(t) for _, t in relations])
    if any(not t for _, t in relations):
        return run
    # children carry larger preorder numbers, so reverse order is bottom-up
    for u in reversed(td.nodes):
        p = td.parent[u]
        if p is None:
            continue
        ucols, utable = relations[u]
        pcols, ptable = relations[p]
        shared = [c for c in pcols if c in ucols]
        keys = {tuple(row[ucols.index(c)] for c in shared) for row in utable}
        kept = {row for row in ptable
                if tuple(row[pcols.index(c)] for c in shared) in keys}
        relations[p] = (pcols, kept)
        if not kept:
            return run
    run.result = bool(relations[td.root][1])
    return run


def solve_decomposed(a: Structure, b: Structure, use_core: bool = True,
                     limits: Limits | None = None) -> bool:
    return run_decomposed(a, b, use_core, limits).result
