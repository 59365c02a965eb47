"""Tree, generalized hypertree and hypertree decompositions.

Exact widths are computed by dynamic programming over subsets of vertices:
for a monotone bag cost f, the best f-width over all elimination orderings
satisfies

    W(S) = min_{v in S} max(W(S - v), f({v} | Q(S - v, v)))

where Q(S, v) are the vertices outside S u {v} reachable from v through S.
Since f is monotone the optimum over all tree decompositions is attained by
the clique tree of some triangulation, hence by an elimination ordering.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .covers import fractional_cover, integral_cover
from .errors import InvalidGHD, ParseError, SizeLimitExceeded, UncoverableVertex
from .model import Hypergraph

KINDS = {
    "tw": "tw", "cardinality": "tw",
    "ghw": "ghw", "integral": "ghw", "integral-cover": "ghw", "rho": "ghw",
    "fhw": "fhw", "fractional": "fhw", "fractional-cover": "fhw", "rho-star": "fhw",
}


@dataclass(frozen=True)
class Limits:
    tw: int = 16
    ghw: int = 10
    fhw: int = 10
    hw: int = 9

    @classmethod
    def from_env(cls, var="SEMWIDTH_LIMITS") -> "Limits":
        raw = os.environ.get(var, "").strip()
        if not raw:
            return cls()
        values = {}
        for item in raw.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in ("tw", "ghw", "fhw", "hw"):
                raise ValueError(f"unknown limit {key!r} in {var}")
            values[key] = int(val)
        return cls(**values)


def _limits(limits):
    return limits if limits is not None else Limits.from_env()


@dataclass(frozen=True)
class TreeDecomposition:
    """Nodes are 0..m-1 in preorder; node 0 is the root."""

    bags: tuple  # tuple[frozenset, ...]
    parent: tuple  # tuple[int | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "parent", tuple(self.parent))
        if len(self.bags) != len(self.parent):
            raise ValueError("bags and parent pointers differ in length")

    @property
    def nodes(self):
        return range(len(self.bags))

    def children(self, u) -> list[int]:
        return [c for c, p in enumerate(self.parent) if p == u]

    @property
    def root(self):
        return next((u for u, p in enumerate(self.parent) if p is None), None)

    def tree_edges(self):
        return [(p, c) for c, p in enumerate(self.parent) if p is not None]

    def preorder(self) -> list[int]:
        out, stack = [], [self.root] if self.root is not None else []
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children(u)))
        return out

    def subtree_vertices(self, u) -> frozenset:
        acc = set(self.bags[u])
        for c in self.children(u):
            acc |= self.subtree_vertices(c)
        return frozenset(acc)


@dataclass(frozen=True)
class CoveredDecomposition:
    base: TreeDecomposition
    covers: tuple  # tuple[frozenset[str], ...], one per node

    def __post_init__(self):
        object.__setattr__(self, "covers", tuple(frozenset(c) for c in self.covers))
        if len(self.covers) != len(self.base.bags):
            raise ValueError("one cover per node required")

    @property
    def width(self) -> int:
        return max((len(c) for c in self.covers), default=0)


@dataclass(frozen=True)
class ScvRecord:
    node: int
    edge: str
    leaked: frozenset


@dataclass
class ValidationReport:
    not_a_tree: bool = False
    unknown_vertices: list = field(default_factory=list)
    uncovered_edges: list = field(default_factory=list)
    disconnected_vertices: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.not_a_tree or self.unknown_vertices
                    or self.uncovered_edges or self.disconnected_vertices)

    def __bool__(self):
        return self.ok

    def messages(self) -> list[str]:
        out = []
        if self.not_a_tree:
            out.append("parent pointers do not form a rooted tree")
        out += [f"unknown vertex {v}" for v in self.unknown_vertices]
        out += [f"edge {e} is in no bag" for e in self.uncovered_edges]
        out += [f"occurrences of {v} are disconnected" for v in self.disconnected_vertices]
        return out


def _is_tree(td: TreeDecomposition) -> bool:
    if not td.bags:
        return True
    roots = [u for u, p in enumerate(td.parent) if p is None]
    if len(roots) != 1:
        return False
    return len(td.preorder()) == len(td.bags)


def validate_td(h: Hypergraph, td: TreeDecomposition) -> ValidationReport:
    report = ValidationReport()
    if not _is_tree(td):
        report.not_a_tree = True
        return report
    verts = set(h.vertices)
    report.unknown_vertices = sorted(set().union(*td.bags) - verts) if td.bags else []
    for name, e in h.edges.items():
        if not any(e <= b for b in td.bags):
            report.uncovered_edges.append(name)
    for v in h.vertices:
        holding = {u for u in td.nodes if v in td.bags[u]}
        if not holding:
            continue
        # connected iff exactly one holding node has a parent outside the set
        tops = [u for u in holding if td.parent[u] not in holding]
        if len(tops) != 1:
            report.disconnected_vertices.append(v)
    return report


def _check_ghd(h: Hypergraph, d: CoveredDecomposition):
    report = validate_td(h, d.base)
    if not report.ok:
        raise InvalidGHD("; ".join(report.messages()))
    for u in d.base.nodes:
        unknown = d.covers[u] - set(h.edges)
        if unknown:
            raise InvalidGHD(f"node {u} covers with unknown edges {sorted(unknown)}")
        union = set().union(*(h.edges[n] for n in d.covers[u]))
        if not d.base.bags[u] <= union:
            raise InvalidGHD(f"bag of node {u} not inside the union of its cover")


def scv_list(h: Hypergraph, d: CoveredDecomposition) -> list[ScvRecord]:
    """Special condition violations, in preorder then edge-name order."""
    _check_ghd(h, d)
    td = d.base
    out = []
    for u in td.preorder():
        below = td.subtree_vertices(u)
        for name in sorted(d.covers[u]):
            leaked = (h.edges[name] & below) - td.bags[u]
            if leaked:
                out.append(ScvRecord(u, name, frozenset(leaked)))
    return out


def _bag_cost(h: Hypergraph, kind: str):
    if kind == "tw":
        return lambda bag: len(bag) - 1
    if kind == "ghw":
        return lambda bag: integral_cover(h, bag)[0] if bag else 0
    return lambda bag: fractional_cover(h, bag).total if bag else Fraction(0)


def width_of(h: Hypergraph, td: TreeDecomposition, kind: str):
    """Maximum bag cost under |B|-1, rho_H or rho*_H."""
    kind = KINDS[kind]
    cost = _bag_cost(h, kind)
    values = [cost(b) for b in td.bags]
    if not values:
        return Fraction(0)
    return Fraction(max(values))


# -- exact widths ------------------------------------------------------------

def _relevant_vertices(h: Hypergraph, kind: str) -> list[str]:
    if kind == "tw":
        return list(h.vertices)
    iso = set(h.isolated())
    return [v for v in h.vertices if v not in iso]


def _elimination_dp(verts: Sequence[str], adj: Mapping[str, set], cost):
    """Optimal elimination ordering for a monotone bag cost.

    Returns (value, order) where order lists vertices first-eliminated first.
    """
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for v in verts:
        for w in adj[v]:
            if w in index:
                nbr[index[v]] |= 1 << index[w]
    memo_cost = {}

    def bag_of(s, i):
        comp = 1 << i
        todo = nbr[i] & s
        while todo:
            low = todo & -todo
            todo ^= low
            if not comp & low:
                comp |= low
                j = low.bit_length() - 1
                todo |= nbr[j] & s & ~comp
        reach = 0
        m = comp
        while m:
            low = m & -m
            m ^= low
            reach |= nbr[low.bit_length() - 1]
        return (reach & ~(s | comp)) | (1 << i)

    def f(mask):
        if mask not in memo_cost:
            memo_cost[mask] = cost(frozenset(verts[i] for i in range(n) if mask >> i & 1))
        return memo_cost[mask]

    full = (1 << n) - 1
    best = [None] * (full + 1)
    choice = [0] * (full + 1)
    best[0] = -1
    for s in range(1, full + 1):
        cand = []
        m = s
        while m:
            low = m & -m
            m ^= low
            i = low.bit_length() - 1
            cand.append((best[s ^ low], i))
        cand.sort()
        value, pick = None, None
        for prev, i in cand:
            if value is not None and prev >= value:
                break
            c = f(bag_of(s ^ (1 << i), i))
            here = max(prev, c)
            if value is None or here < value:
                value, pick = here, i
        best[s] = value
        choice[s] = pick
    order = []
    s = full
    while s:
        i = choice[s]
        order.append(verts[i])
        s ^= 1 << i
    order.reverse()
    return best[full], order


def td_from_order(h: Hypergraph, order: Sequence[str]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``."""
    adj = {v: set(ws) & set(order) for v, ws in h.neighbours().items() if v in set(order)}
    pos = {v: i for i, v in enumerate(order)}
    fill = {v: set(adj[v]) for v in order}
    bags, parent_of = {}, {}
    for v in order:
        later = {w for w in fill[v] if pos[w] > pos[v]}
        bags[v] = frozenset(later | {v})
        for a in later:
            fill[a] |= later - {a}
        parent_of[v] = min(later, key=pos.get) if later else None
    roots = [v for v in order if parent_of[v] is None]
    for r in roots[:-1]:
        parent_of[r] = roots[-1]
    return _canonical(bags, parent_of, roots[-1] if roots else None)


def _canonical(bags: dict, parent_of: dict, root) -> TreeDecomposition:
    """Contract bags contained in their parent, prune empty bags and number
    nodes in preorder with children sorted by bag contents."""
    if root is None:
        return TreeDecomposition((frozenset(),), (None,))
    children = {u: [] for u in bags}
    for u, p in parent_of.items():
        if p is not None:
            children[p].append(u)

    def absorb(u):
        # merge subset children into u (repeat: adopted grandchildren may be subsets too)
        changed = True
        while changed:
            changed = False
            for c in list(children[u]):
                if bags[c] <= bags[u]:
                    children[u].remove(c)
                    children[u].extend(children[c])
                    changed = True
        for c in children[u]:
            absorb(c)

    # a root whose bag is inside a child's bag: promote the child
    while True:
        sup = next((c for c in children[root] if bags[root] <= bags[c]), None)
        if sup is None:
            break
        children[sup].extend(c for c in children[root] if c != sup)
        root = sup
    absorb(root)

    out_bags, out_parent = [], []

    def key(u):
        return sorted(bags[u])

    def visit(u, p):
        if not bags[u] and p is not None:
            for c in sorted(children[u], key=key):
                visit(c, p)
            return
        me = len(out_bags)
        out_bags.append(bags[u])
        out_parent.append(p)
        for c in sorted(children[u], key=key):
            visit(c, me)

    visit(root, None)
    return TreeDecomposition(tuple(out_bags), tuple(out_parent))


def exact_width(h: Hypergraph, kind: str, limits: Limits | None = None):
    """Exact tw / ghw / fhw with a witness tree decomposition."""
    kind = KINDS[kind]
    limits = _limits(limits)
    verts = _relevant_vertices(h, kind)
    cap = getattr(limits, kind)
    if len(verts) > cap:
        raise SizeLimitExceeded(f"{kind} limited to {cap} vertices, got {len(verts)}")
    if not verts:
        return Fraction(0), TreeDecomposition((frozenset(),), (None,))
    value, order = _elimination_dp(verts, h.neighbours(), _bag_cost(h, kind))
    td = td_from_order(h, order)
    return Fraction(value), td


def rank(h: Hypergraph) -> int:
    return h.rank


def subw_bounds(h: Hypergraph, limits: Limits | None = None) -> tuple[Fraction, Fraction]:
    """Interval containing subw(h): [(tw+1)/rank, fhw]."""
    if not h.edges:
        return Fraction(0), Fraction(0)
    tw, _ = exact_width(h, "tw", limits)
    fhw, _ = exact_width(h, "fhw", limits)
    return (tw + 1) / h.rank, fhw


# -- hypertree width ---------------------------------------------------------

def _components(vertices: frozenset, edges: Sequence[frozenset]) -> list[frozenset]:
    left = set(vertices)
    out = []
    while left:
        start = min(left)
        comp = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for e in edges:
                if v in e:
                    for w in e:
                        if w in left and w not in comp:
                            comp.add(w)
                            frontier.append(w)
        left -= comp
        out.append(frozenset(comp))
    return sorted(out, key=sorted)


def exact_hw(h: Hypergraph, k: int, limits: Limits | None = None) -> CoveredDecomposition | None:
    """A hypertree decomposition of width <= k, or None if hw(h) > k.

    Top-down separator search in the style of k-decomp: a component C with
    connector vertices ``conn`` is split by a set S of at most k edges with
    conn <= var(S) and var(S) & C nonempty; the node gets bag
    var(S) & (C | conn) and one child per [var(S)]-component inside C.
    """
    limits = _limits(limits)
    if k < 1:
        raise ValueError("k must be >= 1")
    iso = set(h.isolated())
    verts = frozenset(v for v in h.vertices if v not in iso)
    if len(verts) > limits.hw:
        raise SizeLimitExceeded(f"hw limited to {limits.hw} vertices, got {len(verts)}")
    names = sorted(h.edges)
    sets = [h.edges[n] for n in names]
    if not names:
        return CoveredDecomposition(TreeDecomposition((frozenset(),), (None,)), (frozenset(),))
    memo = {}

    def connector(comp):
        touching = [e for e in sets if e & comp]
        return frozenset().union(*touching) - comp

    def decompose(comp, conn):
        key = (comp, conn)
        if key in memo:
            return memo[key]
        memo[key] = None  # guards against re-entry; components strictly shrink
        region = comp | conn
        candidates = [i for i, e in enumerate(sets) if e & region]
        result = None
        for size in range(1, k + 1):
            for sep in combinations(candidates, size):
                covered = frozenset().union(*(sets[i] for i in sep))
                if not conn <= covered or not covered & comp:
                    continue
                rest = comp - covered
                subs = _components(rest, [e & rest for e in sets])
                kids = []
                for sub in subs:
                    child = decompose(sub, connector(sub))
                    if child is None:
                        break
                    kids.append(child)
                else:
                    result = (covered & region, frozenset(names[i] for i in sep), kids)
                    break
            if result is not None:
                break
        memo[key] = result
        return result

    tree = decompose(verts, frozenset())
    if tree is None:
        return None
    bags, covers, parent = [], [], []

    def emit(node, p):
        me = len(bags)
        bags.append(node[0])
        covers.append(node[1])
        parent.append(p)
        for c in node[2]:
            emit(c, me)

    emit(tree, None)
    return CoveredDecomposition(TreeDecomposition(tuple(bags), tuple(parent)), tuple(covers))


def hypertree_width(h: Hypergraph, limits: Limits | None = None):
    """(hw(h), witness HD)."""
    if not h.edges:
        return 0, exact_hw(h, 1, limits)
    for k in range(1, len(h.edges) + 1):
        d = exact_hw(h, k, limits)
        if d is not None:
            return k, d
    raise AssertionError("the all-edges cover always yields an HD")


def ghd_from_td(h: Hypergraph, td: TreeDecomposition) -> CoveredDecomposition:
    """Attach a minimum integral edge cover to every bag."""
    covers = []
    for b in td.bags:
        try:
            covers.append(integral_cover(h, b)[1])
        except UncoverableVertex as exc:
            raise InvalidGHD(str(exc)) from None
    return CoveredDecomposition(td, tuple(covers))


# -- .td format --------------------------------------------------------------

def format_td(td: TreeDecomposition | CoveredDecomposition, metric: str = "none",
              value=None) -> str:
    covers = None
    if isinstance(td, CoveredDecomposition):
        covers, td = td.covers, td.base
    val = "-" if value is None else str(value)
    lines = [f"s td {len(td.bags)} {metric} {val}"]
    for u in td.nodes:
        lines.append(" ".join(["b", str(u + 1), *sorted(td.bags[u])]))
        if covers is not None:
            lines.append(" ".join(["c", str(u + 1), *sorted(covers[u])]))
    for p, c in td.tree_edges():
        lines.append(f"t {p + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str):
    """Parse a .td file into a TreeDecomposition or CoveredDecomposition."""
    count = None
    bags, covers, parent = {}, {}, {}
    for lineno, raw in enumerate(text.split("\n"), 1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        tag = parts[0]
        try:
            if tag == "s":
                if len(parts) < 3 or parts[1] != "td":
                    raise ParseError("malformed header", lineno)
                count = int(parts[2])
            elif tag == "b":
                bags[int(parts[1])] = frozenset(parts[2:])
            elif tag == "c":
                covers[int(parts[1])] = frozenset(parts[2:])
            elif tag == "t":
                p, c = int(parts[1]), int(parts[2])
                if c in parent:
                    raise ParseError(f"node {c} has two parents", lineno)
                parent[c] = p
            else:
                raise ParseError(f"unknown line type {tag!r}", lineno)
        except (ValueError, IndexError):
            raise ParseError(f"malformed line {raw.strip()!r}", lineno) from None
    if count is None:
        raise ParseError("missing 's td' header")
    if sorted(bags) != list(range(1, count + 1)):
        raise ParseError(f"expected bags 1..{count}, got {sorted(bags)}")
    ids = sorted(bags)
    td = TreeDecomposition(tuple(bags[i] for i in ids),
                           tuple(parent[i] - 1 if i in parent else None for i in ids))
    if covers:
        return CoveredDecomposition(td, tuple(covers.get(i, frozenset()) for i in ids))
    return td
