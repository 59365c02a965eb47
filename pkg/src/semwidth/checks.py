"""Seeded property suites run by ``semwidth check``.

Item ``i`` of a pool with seed ``s`` draws from ``random.Random(f"{s}/{i}")``,
so a failure reproduces from the printed seed and index alone.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .covers import (ding_bound, dual, fractional_cover, gap_report,
                     pushforward_cover, rho, rho_star, transversality,
                     vc_dimension)
from .decomp import (exact_width, format_td, hypertree_width, scv_list,
                     subw_bounds, validate_td, width_of)
from .generators import (GRAPH_SIGNATURE, hypergraph_structure, random_graph,
                         random_ghd_with_scv, random_hypergraph,
                         random_reduced_hypergraph, random_structure)
from .hom import core, find_homomorphism, is_contained, is_homomorphism
from .model import (Hypergraph, Structure, gen_grid_instance, hypergraph_of,
                    serialize_hypergraph, serialize_structure)
from .reductions import extract_solution, redh_reduce
from .semantic import scv_repair_steps, semantic_hw
from .solver import run_decomposed, solve_bruteforce
from .ucq import (Ucq, make_nonredundant, serialize_ucq, solve_ucq,
                  ucq_equivalent, ucq_semantic_subw_bounds)


@dataclass
class CheckReport:
    suite: str
    seed: int
    checked: int = 0
    fixed: int = 0
    failures: list = field(default_factory=list)  # (label, message, serialized input)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        passed = self.checked - len({f[0] for f in self.failures if f[0] != "fixed"})
        lines = [f"{self.suite}: seed {self.seed}: pool {passed}/{self.checked} pass, "
                 f"fixed examples {self.fixed}"]
        for label, message, data in self.failures:
            lines.append(f"FAIL {label}: {message}")
            lines.extend("  " + row for row in data.rstrip("\n").split("\n"))
        return "\n".join(lines)


def item_rng(seed, i) -> random.Random:
    return random.Random(f"{seed}/{i}")


def _run(report, label, data, body):
    """Run ``body()``, which returns a list of problems; record any failure."""
    try:
        problems = body()
    except Exception as exc:  # report content, not a crash
        problems = [f"{type(exc).__name__}: {exc}"]
    for p in problems:
        report.failures.append((label, p, data))


# -- hierarchy ---------------------------------------------------------------

def hierarchy_item(h: Hypergraph) -> list[str]:
    out = []
    tw, tw_td = exact_width(h, "tw")
    ghw, ghw_td = exact_width(h, "ghw")
    fhw, fhw_td = exact_width(h, "fhw")
    hw, hd = hypertree_width(h)
    lower, upper = subw_bounds(h)
    if not fhw <= ghw <= hw <= tw + 1:
        out.append(f"fhw {fhw} <= ghw {ghw} <= hw {hw} <= tw+1 {tw + 1} fails")
    if h.edges and not lower <= fhw:
        out.append(f"subw lower {lower} > fhw {fhw}")
    if upper != fhw:
        out.append(f"subw upper {upper} != fhw {fhw}")
    if not hw <= 3 * ghw + 1:
        out.append(f"hw {hw} > 3 ghw + 1")
    for kind, value, td in (("tw", tw, tw_td), ("ghw", ghw, ghw_td), ("fhw", fhw, fhw_td)):
        rep = validate_td(h, td)
        if not rep.ok:
            out.append(f"{kind} witness invalid: {rep.messages()}")
        elif width_of(h, td, kind) != value:
            out.append(f"{kind} witness has width {width_of(h, td, kind)}, not {value}")
    if not validate_td(h, hd.base).ok or scv_list(h, hd) or hd.width != hw:
        out.append("hw witness is not an HD of the reported width")
    return out


def _hierarchy_fixed():
    tri = Hypergraph.from_sets([{"a", "b"}, {"b", "c"}, {"a", "c"}])
    edge = Hypergraph.from_sets([{"a", "b", "c"}])
    return [
        (tri, {"tw": 2, "ghw": 2, "hw": 2, "fhw": Fraction(3, 2), "rho": 2,
               "rho-star": Fraction(3, 2), "tau": 2, "tau-star": Fraction(3, 2), "vc": 1}),
        (edge, {"tw": 2, "ghw": 1, "hw": 1, "fhw": 1, "rho": 1, "rho-star": 1,
                "tau": 1, "tau-star": 1, "vc": 0}),
    ]


def spot_values(h: Hypergraph) -> dict:
    tau, tau_star, _ = transversality(h)
    return {"tw": exact_width(h, "tw")[0], "ghw": exact_width(h, "ghw")[0],
            "hw": hypertree_width(h)[0], "fhw": exact_width(h, "fhw")[0],
            "rho": rho(h), "rho-star": rho_star(h), "tau": tau, "tau-star": tau_star,
            "vc": vc_dimension(h)[0]}


def check_hierarchy(seed=0, count=50) -> CheckReport:
    report = CheckReport("hierarchy", seed)
    for h, expected in _hierarchy_fixed():
        report.fixed += 1
        got = spot_values(h)
        for k, v in expected.items():
            if got[k] != v:
                report.failures.append(("fixed", f"{k} = {got[k]}, expected {v}",
                                        serialize_hypergraph(h)))
    for i in range(count):
        rng = item_rng(seed, i)
        h = random_hypergraph(rng, rng.randint(2, 8), rng.randint(1, 9), max_edge=4)
        report.checked += 1
        _run(report, f"item {i}", serialize_hypergraph(h), lambda: hierarchy_item(h))
    return report


# -- core minimality -----------------------------------------------------------

def core_item(a: Structure) -> list[str]:
    out = []
    c, f = core(a)
    if not is_homomorphism(a, c, f):
        out.append("retraction is not a homomorphism a -> core")
    if any(f[x] != x for x in c.domain):
        out.append("retraction does not fix the core")
    if not set(c.domain) <= set(a.domain) or c != a.induced(c.domain):
        out.append("core is not an induced substructure")
    for x in c.domain:
        if find_homomorphism(c, c.induced(set(c.domain) - {x})) is not None:
            out.append(f"core is not minimal: {x} can be dropped")
            break
    ha, hc = hypergraph_of(a), hypergraph_of(c)
    if rho_star(hc) > rho_star(ha):
        out.append(f"rho* of core {rho_star(hc)} > {rho_star(ha)}")
    for kind in ("fhw", "ghw"):
        wc, wa = exact_width(hc, kind)[0], exact_width(ha, kind)[0]
        if wc > wa:
            out.append(f"{kind} of core {wc} > {wa}")
    value, (a2, d2) = semantic_hw(a)
    if value != exact_width(hc, "ghw")[0]:
        out.append(f"semantic hw {value} != ghw(core)")
    h2 = hypergraph_of(a2)
    if scv_list(h2, d2) or d2.width != value:
        out.append("semantic hw witness is not an HD of the reported width")
    if find_homomorphism(a, a2) is None or find_homomorphism(a2, a) is None:
        out.append("semantic hw witness structure is not equivalent")
    return out


def check_core_minimality(seed=0, count=50) -> CheckReport:
    report = CheckReport("core-minimality", seed)
    for n in (2, 3):
        grid = gen_grid_instance(n, Structure(GRAPH_SIGNATURE, ["0", "1"], {"E": []})).left
        report.fixed += 1
        c, _ = core(grid)
        if len(c.domain) != 2 or c.num_facts != 2:
            report.failures.append(("fixed", f"grid {n} core has {len(c.domain)} elements",
                                    serialize_structure(grid)))
    for i in range(count):
        rng = item_rng(seed, i)
        a = random_structure(rng, elements=(1, 5), density=0.3, max_facts=8)
        report.checked += 1
        _run(report, f"item {i}", serialize_structure(a), lambda: core_item(a))
    return report


# -- duality -----------------------------------------------------------------

def duality_item(h: Hypergraph) -> list[str]:
    out = []
    d = dual(h)
    tau_d, tau_star_d, _ = transversality(d)
    if rho(h) != tau_d:
        out.append(f"rho {rho(h)} != tau(dual) {tau_d}")
    if rho_star(h) != tau_star_d:
        out.append(f"rho* {rho_star(h)} != tau*(dual) {tau_star_d}")
    vc, _ = vc_dimension(h)
    vcd, _ = vc_dimension(d)
    if not vcd < 2 ** (vc + 1):
        out.append(f"vc(dual) {vcd} >= 2^(vc+1) with vc {vc}")
    gaps = gap_report(h)
    if not gaps.cigap <= ding_bound(vc, gaps.rho_star):
        out.append(f"cigap {gaps.cigap} above the bound")
    ghw = exact_width(h, "ghw")[0]
    hw, _ = hypertree_width(h)
    if not hw <= 3 * ghw + 1:
        out.append(f"hw {hw} > 3 ghw + 1")
    if dual(d).edge_sets != h.edge_sets:
        out.append("dual of the dual differs")
    return out


def check_duality(seed=0, count=50) -> CheckReport:
    report = CheckReport("duality", seed)
    tri = Hypergraph.from_sets([{"a", "b"}, {"b", "c"}, {"a", "c"}])
    report.fixed += 1
    _run(report, "fixed", serialize_hypergraph(tri), lambda: duality_item(tri))
    for i in range(count):
        rng = item_rng(seed, i)
        h = random_reduced_hypergraph(rng, vertices=(2, 7), edges=(2, 7))
        report.checked += 1
        _run(report, f"item {i}", serialize_hypergraph(h), lambda: duality_item(h))
    return report


# -- scv repair --------------------------------------------------------------

def scv_item(a: Structure, d) -> list[str]:
    out = []
    counts = []
    last = None
    for a2, d2, scvs in scv_repair_steps(a, d):
        counts.append(len(scvs))
        last = (a2, d2)
    a2, d2 = last
    h2 = hypergraph_of(a2)
    if any(x >= y for y, x in zip(counts, counts[1:])):
        out.append(f"violation counts do not strictly decrease: {counts}")
    if scv_list(h2, d2):
        out.append("violations remain after repair")
    if d2.width != d.width:
        out.append(f"width changed from {d.width} to {d2.width}")
    if find_homomorphism(a, a2) is None:
        out.append("no homomorphism original -> repaired")
    if find_homomorphism(a2, a) is None:
        out.append("no homomorphism repaired -> original")
    return out


def check_scv_repair(seed=0, count=50) -> CheckReport:
    report = CheckReport("scv-repair", seed)
    for i in range(count):
        a, d = random_ghd_with_scv(item_rng(seed, i))
        report.checked += 1
        data = serialize_structure(a) + format_td(d)
        _run(report, f"item {i}", data, lambda: scv_item(a, d))
    return report


# -- cover pushforward ---------------------------------------------------------

def random_hom_pair(rng):
    """(g, h, f, cover of g) with f: g -> h a hypergraph homomorphism."""
    g = random_hypergraph(rng, rng.randint(2, 6), rng.randint(1, 6), max_edge=3)
    targets = [f"w{i}" for i in range(rng.randint(1, 5))]
    f = {v: rng.choice(targets) for v in g.vertices}
    images = [frozenset(f[v] for v in e) for e in g.edges.values()]
    extra = [frozenset(rng.sample(targets, rng.randint(1, len(targets))))
             for _ in range(rng.randint(0, 3))]
    h = Hypergraph.from_sets(images + extra, vertices=targets)
    x = fractional_cover(g, set(g.vertices) - set(g.isolated()))
    return g, h, f, x


def pushforward_item(g, h, f, x) -> list[str]:
    out = []
    y = pushforward_cover(g, h, f, x)
    if y.total != x.total:
        out.append(f"total {y.total} != {x.total}")
    image = {f[v] for v in g.vertices if v not in set(g.isolated())}
    if not y.covers(h, image):
        out.append("pushed cover misses an image vertex")
    return out


def check_pushforward(seed=0, count=50) -> CheckReport:
    report = CheckReport("pushforward", seed)
    for i in range(count):
        g, h, f, x = random_hom_pair(item_rng(seed, i))
        report.checked += 1
        data = (serialize_hypergraph(g) + "---\n" + serialize_hypergraph(h) + "---\n"
                + "".join(f"{k} -> {v}\n" for k, v in sorted(f.items())))
        _run(report, f"item {i}", data, lambda: pushforward_item(g, h, f, x))
    return report


# -- redh --------------------------------------------------------------------

def redh_item(c: Structure, d: Structure, a: Structure, ident=None) -> list[str]:
    out = []
    expected, _ = solve_bruteforce(c, d)
    inst = redh_reduce(c, d, a, ident)
    got, g = solve_bruteforce(inst.left, inst.right)
    if got != expected:
        out.append(f"original {expected}, reduced {got}")
    elif got:
        h = extract_solution(g, ident)
        if not is_homomorphism(c, d, h):
            out.append("extracted mapping is not a solution")
    return out


def shape_for(c: Structure, rng=None) -> tuple[Structure, dict]:
    """A structure with the hypergraph of ``c`` over fresh relations and
    renamed elements, plus the identification back to ``c``."""
    a = hypergraph_structure(hypergraph_of(c), relation="S")
    names = list(c.domain)
    if rng is not None:
        rng.shuffle(names)
    rename = {x: f"p{i}" for i, x in enumerate(names)}
    return a.rename(rename), {v: k for k, v in rename.items()}


def check_redh(seed=0, count=50) -> CheckReport:
    report = CheckReport("redh", seed)
    for i in range(count):
        rng = item_rng(seed, i)
        c = random_graph(rng, vertices=(1, 3), density=0.4)
        d = random_graph(rng, vertices=(1, 3), density=0.5)
        a, ident = shape_for(c, rng)
        report.checked += 1
        data = serialize_structure(c) + "---\n" + serialize_structure(d)
        _run(report, f"item {i}", data, lambda: redh_item(c, d, a, ident))
    return report


# -- ucq ---------------------------------------------------------------------

def random_ucq(rng) -> Ucq:
    ds = [random_graph(rng, vertices=(1, 4), density=0.35)
          for _ in range(rng.randint(1, 4))]
    return Ucq(tuple(ds))


def ucq_item(u: Ucq, b: Structure, rng) -> list[str]:
    out = []
    nr = make_nonredundant(u)
    for i, a in enumerate(nr.disjuncts):
        for j, a2 in enumerate(nr.disjuncts):
            if i != j and is_contained(a, a2):
                out.append(f"nr keeps disjunct {i} contained in {j}")
    if not ucq_equivalent(nr, u):
        out.append("nr(u) is not equivalent to u")
    expected = any(solve_bruteforce(a, b)[0] for a in u.disjuncts)
    if solve_ucq(u, b) != expected:
        out.append(f"solve_ucq disagrees with brute force ({expected})")
    # a disjunct with extra facts is contained in the original one
    base = rng.choice(u.disjuncts)
    extra = [(x, y) for x in base.domain for y in base.domain if rng.random() < 0.3]
    bigger = Ucq(u.disjuncts + (base.add_facts([("E", t) for t in extra]),))
    if not ucq_equivalent(bigger, u):
        out.append("adding a contained disjunct changed the query")
    if ucq_semantic_subw_bounds(bigger) != ucq_semantic_subw_bounds(u):
        out.append("subw bounds changed under an equivalent reformulation")
    return out


def check_ucq(seed=0, count=50) -> CheckReport:
    report = CheckReport("ucq", seed)
    for i in range(count):
        rng = item_rng(seed, i)
        u = random_ucq(rng)
        b = random_graph(rng, vertices=(1, 3), density=0.4)
        report.checked += 1
        data = serialize_ucq(u) + "===\n" + serialize_structure(b)
        _run(report, f"item {i}", data, lambda: ucq_item(u, b, rng))
    return report


# -- solver agreement ----------------------------------------------------------

def directed_cycle(n: int) -> Structure:
    dom = [f"c{i}" for i in range(n)]
    return Structure(GRAPH_SIGNATURE, dom, {"E": [(dom[i], dom[(i + 1) % n]) for i in range(n)]})


def loop_graph(n: int = 1) -> Structure:
    dom = [f"l{i}" for i in range(n)]
    return Structure(GRAPH_SIGNATURE, dom, {"E": [(x, x) for x in dom]})


def clique(n: int) -> Structure:
    dom = [f"k{i}" for i in range(n)]
    return Structure(GRAPH_SIGNATURE, dom, {"E": [(x, y) for x in dom for y in dom if x != y]})


def fixed_solver_instances():
    k2 = clique(2)
    out = [gen_grid_instance(n, k2) for n in (1, 2, 3)]
    out = [(i.left, i.right) for i in out]
    graphs = [directed_cycle(3), loop_graph(1), loop_graph(2), clique(2), clique(3),
              directed_cycle(2), directed_cycle(4)]
    out += [(a, b) for a in graphs for b in graphs]
    return out


def solver_item(a: Structure, b: Structure) -> list[str]:
    expected, _ = solve_bruteforce(a, b)
    out = []
    for use_core in (True, False):
        got = run_decomposed(a, b, use_core=use_core).result
        if got != expected:
            out.append(f"decomposed (core={use_core}) {got}, brute force {expected}")
    return out


def check_solver_agreement(seed=0, count=50) -> CheckReport:
    report = CheckReport("solver-agreement", seed)
    for a, b in fixed_solver_instances():
        report.fixed += 1
        data = serialize_structure(a) + "---\n" + serialize_structure(b)
        _run(report, "fixed", data, lambda: solver_item(a, b))
    for i in range(count):
        rng = item_rng(seed, i)
        if rng.random() < 0.5:
            a = random_graph(rng, vertices=(1, 6), density=0.3)
            b = random_graph(rng, vertices=(1, 4), density=0.4)
        else:
            sig = random_structure(rng).signature
            a = random_structure(rng, elements=(1, 5), signature=sig, density=0.2, max_facts=6)
            b = random_structure(rng, elements=(1, 3), signature=sig, density=0.5)
        report.checked += 1
        data = serialize_structure(a) + "---\n" + serialize_structure(b)
        _run(report, f"item {i}", data, lambda: solver_item(a, b))
    return report


SUITES = {
    "hierarchy": check_hierarchy,
    "core-minimality": check_core_minimality,
    "duality": check_duality,
    "scv-repair": check_scv_repair,
    "pushforward": check_pushforward,
    "redh": check_redh,
    "ucq": check_ucq,
    "solver-agreement": check_solver_agreement,
}
