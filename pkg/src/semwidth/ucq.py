"""Boolean unions of conjunctive queries given as sets of structures."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decomp import Limits, subw_bounds
from .errors import SignatureMismatch
from .hom import core, hom_equivalent, is_contained
from .model import Structure, hypergraph_of, parse_structure, serialize_structure, align_signatures
from .solver import solve_decomposed


@dataclass(frozen=True)
class Ucq:
    disjuncts: tuple  # tuple[Structure, ...]

    def __post_init__(self):
        ds = tuple(self.disjuncts)
        if not ds:
            raise ValueError("a UCQ needs at least one disjunct")
        sig = ds[0].signature
        if any(d.signature != sig for d in ds):
            raise SignatureMismatch("disjuncts must share one signature")
        object.__setattr__(self, "disjuncts", ds)

    @property
    def signature(self):
        return self.disjuncts[0].signature

    def __len__(self):
        return len(self.disjuncts)

    def __iter__(self):
        return iter(self.disjuncts)


def make_nonredundant(u: Ucq) -> Ucq:
    """nr(u): delete disjuncts contained in another until none is.

    Candidates are scanned in index order and the scan restarts after every
    deletion. Of two mutually contained disjuncts the earlier survives.
    """
    ds = list(u.disjuncts)
    changed = True
    while changed:
        changed = False
        for i, di in enumerate(ds):
            for j, dj in enumerate(ds):
                if i == j or not is_contained(di, dj):
                    continue
                if j > i and is_contained(dj, di):
                    continue
                del ds[i]
                changed = True
                break
            if changed:
                break
    return Ucq(tuple(ds))


def ucq_equivalent(u: Ucq, u2: Ucq) -> bool:
    if u.signature != u2.signature:
        raise SignatureMismatch("UCQs over different signatures")
    left = make_nonredundant(u).disjuncts
    right = make_nonredundant(u2).disjuncts
    if len(left) != len(right):
        return False
    partner = {}
    for i, a in enumerate(left):
        matches = [j for j, b in enumerate(right) if hom_equivalent(a, b)]
        if len(matches) != 1:
            return False
        partner[i] = matches[0]
    return len(set(partner.values())) == len(right)


def ucq_semantic_subw_bounds(u: Ucq, limits: Limits | None = None) -> tuple[Fraction, Fraction]:
    """[max lower, max upper] of the subw interval over cores of nr(u)."""
    bounds = [subw_bounds(hypergraph_of(core(a)[0]), limits)
              for a in make_nonredundant(u).disjuncts]
    return max(lo for lo, _ in bounds), max(hi for _, hi in bounds)


def ucq_width(u: Ucq, width) -> object:
    """Plain width of a UCQ: the maximum over its disjuncts."""
    return max(width(a) for a in u.disjuncts)


def solve_ucq(u: Ucq, b: Structure, limits: Limits | None = None) -> bool:
    if u.signature != b.signature:
        raise SignatureMismatch("UCQ and database over different signatures")
    return any(solve_decomposed(core(a)[0], b, use_core=False, limits=limits)
               for a in make_nonredundant(u).disjuncts)


def parse_ucq(text: str) -> Ucq:
    blocks, current = [], []
    for line in text.split("\n"):
        if line.strip() == "---":
            blocks.append("\n".join(current))
            current = []
        else:
            current.append(line)
    blocks.append("\n".join(current))
    parsed = [parse_structure(b) for b in blocks if b.strip()]
    return Ucq(align_signatures(*parsed))


def serialize_ucq(u: Ucq) -> str:
    return "---\n".join(serialize_structure(a) for a in u.disjuncts)
