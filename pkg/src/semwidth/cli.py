"""Command-line front end.

Exit codes: 0 success, 1 negative answer (UNSAT, not equivalent, no witness,
failed check), 2 usage or input error, 3 size limit exceeded.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import checks
from .covers import ding_bound, dual, exotic_witness, gap_report, reduce, vc_dimension
from .decomp import (KINDS, exact_hw, exact_width, format_td, hypertree_width,
                     parse_td, subw_bounds)
from .errors import SemwidthError, SizeLimitExceeded
from .generators import random_hypergraph, random_signature, random_structure
from .hom import core, find_homomorphism, format_mapping, parse_mapping
from .model import (align_signatures, gen_grid_instance, hypergraph_of,
                    parse_hypergraph, parse_structure, serialize_hypergraph,
                    serialize_structure, structure_size)
from .reductions import redh_reduce
from .semantic import SEMANTIC_KINDS, scv_repair_steps, semantic_hw, semantic_width
from .solver import solve_bruteforce, solve_decomposed
from .ucq import (Ucq, make_nonredundant, parse_ucq, serialize_ucq, solve_ucq,
                  ucq_equivalent)

SEED_MAX = 2 ** 64


class UsageError(Exception):
    pass


def _read(path):
    return Path(path).read_text()


def _write(path, text, out):
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


def load_structure(path):
    return parse_structure(_read(path))


def load_hypergraph(path):
    """A .hg file, or the hypergraph of any other (structure) file."""
    text = _read(path)
    if str(path).endswith(".hg"):
        return parse_hypergraph(text)
    return hypergraph_of(parse_structure(text))


def q(value) -> str:
    return str(value)


# -- subcommands -----------------------------------------------------------------

def cmd_parse(args, out):
    if str(args.file).endswith(".hg") or args.hg:
        h = parse_hypergraph(_read(args.file))
        out.write(f"hypergraph: {len(h.vertices)} vertices, {len(h.edges)} edges, "
                  f"rank {h.rank}\n")
        out.write(serialize_hypergraph(h))
    else:
        a = load_structure(args.file)
        out.write(f"structure: {len(a.domain)} elements, {len(a.signature)} relations, "
                  f"{a.num_facts} facts, size {structure_size(a)}\n")
        out.write(serialize_structure(a))
    return 0


def cmd_width(args, out):
    kind = KINDS[args.kind]
    h = load_hypergraph(args.file)
    value, td = exact_width(h, kind)
    out.write(f"{kind} {q(value)}\n")
    if args.td:
        _write(args.td, format_td(td, kind, value), out)
    return 0


def cmd_hw(args, out):
    h = load_hypergraph(args.file)
    if args.k is not None:
        d = exact_hw(h, args.k)
        if d is None:
            out.write(f"hw > {args.k}\n")
            return 1
        out.write(f"hw <= {args.k}\n")
        value = d.width
    else:
        value, d = hypertree_width(h)
        out.write(f"hw {value}\n")
    if args.td:
        _write(args.td, format_td(d, "hw", value), out)
    return 0


def cmd_subw_bounds(args, out):
    lo, hi = subw_bounds(load_hypergraph(args.file))
    out.write(f"subw-bounds {q(lo)} {q(hi)}\n")
    return 0


def cmd_core(args, out):
    a = load_structure(args.file)
    c, f = core(a)
    out.write(f"domain {len(c.domain)}\nfacts {c.num_facts}\n")
    target = args.output or str(Path(args.file).with_suffix("")) + ".core.str"
    _write(target, serialize_structure(c), out)
    if args.mapping:
        _write(args.mapping, format_mapping(f), out)
    return 0


def cmd_semwidth(args, out):
    a = load_structure(args.file)
    if args.kind == "hw":
        value, (a2, d2) = semantic_hw(a)
        out.write(f"semantic hw {value}\n")
        if args.structure_out:
            _write(args.structure_out, serialize_structure(a2), out)
        if args.td_out:
            _write(args.td_out, format_td(d2, "hw", value), out)
        return 0
    value, c = semantic_width(a, args.kind)
    if args.kind == "subw-bounds":
        out.write(f"semantic subw-bounds {q(value[0])} {q(value[1])}\n")
    else:
        out.write(f"semantic {args.kind} {q(value)}\n")
    out.write(f"core domain {len(c.domain)}\n")
    if args.core_out:
        _write(args.core_out, serialize_structure(c), out)
    return 0


def cmd_repair_scv(args, out):
    a = load_structure(args.structure)
    d = parse_td(_read(args.td))
    if not hasattr(d, "covers"):
        raise UsageError("the .td file needs cover lines ('c ...')")
    width = d.width
    step = 0
    for a2, d2, scvs in scv_repair_steps(a, d):
        out.write(f"step {step}: {len(scvs)} violations\n")
        step += 1
    out.write(f"repaired width {d2.width} (was {width})\n")
    _write(args.structure_out, serialize_structure(a2), out)
    _write(args.td_out, format_td(d2, "hw", d2.width), out)
    return 0


def cmd_reduce(args, out):
    c, d = align_signatures(load_structure(args.scopes), load_structure(args.data))
    a = load_structure(args.shape)
    ident = parse_mapping(_read(args.identification)) if args.identification else None
    inst = redh_reduce(c, d, a, ident)
    _write(args.out_scopes, serialize_structure(inst.left), out)
    _write(args.out_data, serialize_structure(inst.right), out)
    out.write(f"scopes {len(inst.left.domain)} elements, data {len(inst.right.domain)} elements\n")
    return 0


def cmd_ucq_nr(args, out):
    u = parse_ucq(_read(args.file))
    nr = make_nonredundant(u)
    out.write(f"disjuncts {len(u)} -> {len(nr)}\n")
    _write(args.output, serialize_ucq(nr), out)
    return 0


def _aligned_ucqs(u, u2):
    ds = align_signatures(*u.disjuncts, *u2.disjuncts)
    return Ucq(ds[:len(u)]), Ucq(ds[len(u):])


def cmd_ucq_eq(args, out):
    u, u2 = _aligned_ucqs(parse_ucq(_read(args.left)), parse_ucq(_read(args.right)))
    same = ucq_equivalent(u, u2)
    out.write("equivalent\n" if same else "not equivalent\n")
    return 0 if same else 1


def cmd_ucq_solve(args, out):
    u = parse_ucq(_read(args.ucq))
    ds = align_signatures(*u.disjuncts, load_structure(args.data))
    sat = solve_ucq(Ucq(ds[:-1]), ds[-1])
    out.write("SAT\n" if sat else "UNSAT\n")
    return 0 if sat else 1


def cmd_solve(args, out):
    a, b = align_signatures(load_structure(args.scopes), load_structure(args.data))
    if args.mode == "brute":
        sat, witness = solve_bruteforce(a, b)
    else:
        sat = solve_decomposed(a, b, use_core=not args.no_core)
        witness = find_homomorphism(a, b) if sat and args.witness else None
    out.write("SAT\n" if sat else "UNSAT\n")
    if sat and args.witness:
        _write(args.witness, format_mapping(witness), out)
    return 0 if sat else 1


def _maybe_reduced(args):
    h = load_hypergraph(args.file)
    return reduce(h) if getattr(args, "reduce", False) else h


def cmd_vc(args, out):
    vc, witness = vc_dimension(load_hypergraph(args.file))
    out.write(f"vc {vc}\nwitness {' '.join(sorted(witness))}\n")
    return 0


def cmd_exotic(args, out):
    if args.n < 1:
        raise UsageError("n must be >= 1")
    u = exotic_witness(load_hypergraph(args.file), args.n)
    if u is None:
        out.write("none\n")
        return 1
    out.write(f"witness {' '.join(sorted(u))}\n")
    return 0


def cmd_dual(args, out):
    _write(args.output, serialize_hypergraph(dual(_maybe_reduced(args))), out)
    return 0


def cmd_gaps(args, out):
    h = _maybe_reduced(args)
    g = gap_report(h)
    vc, _ = vc_dimension(h)
    out.write(f"rho {g.rho}\nrho-star {q(g.rho_star)}\ntau {g.tau}\n"
              f"tau-star {q(g.tau_star)}\ncigap {q(g.cigap)}\n"
              f"tigap-dual {q(g.tigap_of_dual)}\nvc {vc}\n")
    out.write(f"ding-bound ~{ding_bound(vc, g.rho_star):.6g} (approximate)\n")
    return 0


def _seed(value):
    seed = int(value)
    if not 0 <= seed < SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return seed


def _range(lo, hi, name, least=1):
    if lo < least or hi < lo:
        raise UsageError(f"{name} range must satisfy {least} <= lo <= hi, got {lo} {hi}")
    return lo, hi


def cmd_gen(args, out):
    if args.kind == "grid":
        if args.n is None or args.n < 1 or args.data is None:
            raise UsageError("gen grid N DATA.str")
        text = serialize_structure(gen_grid_instance(args.n, load_structure(args.data)).left)
    elif args.kind == "random-structure":
        if not 0 <= args.density <= 1:
            raise UsageError("density must lie in [0, 1]")
        rng = random.Random(args.seed)
        sig = random_signature(rng, _range(*args.relations, "relations"),
                               _range(*args.arity, "arity"))
        a = random_structure(rng, _range(*args.elements, "elements"), signature=sig,
                             density=args.density)
        text = serialize_structure(a)
    else:
        if args.vertices < 1 or args.edges < 0:
            raise UsageError("need vertices >= 1 and edges >= 0")
        text = serialize_hypergraph(random_hypergraph(args.seed, args.vertices, args.edges,
                                                      args.max_edge))
    _write(args.output, text, out)
    return 0


def cmd_check(args, out):
    if args.count < 0:
        raise UsageError("count must be >= 0")
    report = checks.SUITES[args.suite](seed=args.seed, count=args.count)
    out.write(report.summary() + "\n")
    return 0 if report.ok else 1


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semwidth",
                                description="cores, covers and (semantic) widths of structures")
    sub = p.add_subparsers(dest="command", required=True)
    p.synopsis = sub.choices

    s = sub.add_parser("parse", help="parse and echo a .str or .hg file")
    s.add_argument("file")
    s.add_argument("--hg", action="store_true", help="read as a hypergraph")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("width", help="exact tw, ghw or fhw")
    s.add_argument("--kind", required=True, choices=sorted(KINDS))
    s.add_argument("file")
    s.add_argument("--td", help="write the witness decomposition here")
    s.set_defaults(func=cmd_width)

    s = sub.add_parser("hw", help="hypertree width, or test hw <= k")
    s.add_argument("file")
    s.add_argument("--k", type=int)
    s.add_argument("--td", help="write the witness HD here")
    s.set_defaults(func=cmd_hw)

    s = sub.add_parser("subw-bounds", help="interval [(tw+1)/rank, fhw] around subw")
    s.add_argument("file")
    s.set_defaults(func=cmd_subw_bounds)

    s = sub.add_parser("core", help="compute the core")
    s.add_argument("file")
    s.add_argument("-o", "--output", help="core file (default: <file>.core.str, '-' for stdout)")
    s.add_argument("--mapping", help="write the retraction here")
    s.set_defaults(func=cmd_core)

    s = sub.add_parser("semwidth", help="semantic width via the core")
    s.add_argument("--kind", required=True, choices=list(SEMANTIC_KINDS) + ["hw"])
    s.add_argument("file")
    s.add_argument("--core-out")
    s.add_argument("--structure-out", help="hw only: the repaired equivalent structure")
    s.add_argument("--td-out", help="hw only: its hypertree decomposition")
    s.set_defaults(func=cmd_semwidth)

    s = sub.add_parser("repair-scv", help="remove special condition violations from a GHD")
    s.add_argument("structure")
    s.add_argument("td")
    s.add_argument("--structure-out", default="-")
    s.add_argument("--td-out", default="-")
    s.set_defaults(func=cmd_repair_scv)

    s = sub.add_parser("reduce", help="reduce (c, d) to a CSP whose scopes have the shape of a")
    s.add_argument("--scopes", required=True)
    s.add_argument("--data", required=True)
    s.add_argument("--shape", required=True)
    s.add_argument("--identification", help="mapping file 'x -> y' from shape to scopes")
    s.add_argument("--out-scopes", default="reduced.scopes.str")
    s.add_argument("--out-data", default="reduced.data.str")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("ucq-nr", help="remove redundant disjuncts")
    s.add_argument("file")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_ucq_nr)

    s = sub.add_parser("ucq-eq", help="decide equivalence of two UCQs")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_ucq_eq)

    s = sub.add_parser("ucq-solve", help="evaluate a Boolean UCQ on a database")
    s.add_argument("ucq")
    s.add_argument("data")
    s.set_defaults(func=cmd_ucq_solve)

    s = sub.add_parser("solve", help="decide whether a homomorphism A -> B exists")
    s.add_argument("--mode", choices=("brute", "decomp"), default="decomp")
    s.add_argument("--no-core", action="store_true")
    s.add_argument("--witness", help="write a solution here when SAT")
    s.add_argument("scopes")
    s.add_argument("data")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("vc", help="VC dimension with a shattered witness")
    s.add_argument("file")
    s.set_defaults(func=cmd_vc)

    s = sub.add_parser("exotic", help="n vertices inducing >= 2^n - 1 edges")
    s.add_argument("file")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_exotic)

    for name, func, text in (("dual", cmd_dual, "dual hypergraph"),
                             ("gaps", cmd_gaps, "cover/transversal integrality gaps")):
        s = sub.add_parser(name, help=text)
        s.add_argument("file")
        s.add_argument("--reduce", action="store_true", help="reduce the input first")
        if name == "dual":
            s.add_argument("-o", "--output", default="-")
        s.set_defaults(func=func)

    s = sub.add_parser("gen", help="generate grids and seeded random instances")
    s.add_argument("kind", choices=("grid", "random-structure", "random-hypergraph"))
    s.add_argument("n", nargs="?", type=int, help="grid size")
    s.add_argument("data", nargs="?", help="grid data structure over {E/2}")
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--elements", type=int, nargs=2, default=(2, 6), metavar=("LO", "HI"))
    s.add_argument("--relations", type=int, nargs=2, default=(1, 3), metavar=("LO", "HI"))
    s.add_argument("--arity", type=int, nargs=2, default=(1, 3), metavar=("LO", "HI"))
    s.add_argument("--density", type=float, default=0.25)
    s.add_argument("--vertices", type=int, default=5)
    s.add_argument("--edges", type=int, default=6)
    s.add_argument("--max-edge", type=int)
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", help="run a seeded property suite")
    s.add_argument("suite", choices=sorted(checks.SUITES))
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--count", type=int, default=50)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, out)
    except SizeLimitExceeded as exc:
        err.write(f"semwidth: size limit exceeded: {exc}\n")
        return 3
    except UsageError as exc:
        err.write(parser.synopsis[args.command].format_usage())
        err.write(f"semwidth {args.command}: {exc}\n")
        return 2
    except (SemwidthError, OSError, ValueError) as exc:
        err.write(f"semwidth {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
