"""Cores, edge covers and (semantic) hypergraph widths of relational
structures, with decomposition-guided CSP and UCQ evaluation."""
from .covers import (FractionalCover, dual, fractional_cover, gap_report,
                     integral_cover, rho, rho_star, transversality, vc_dimension)
from .decomp import (CoveredDecomposition, Limits, TreeDecomposition, exact_hw,
                     exact_width, hypertree_width, scv_list, subw_bounds)
from .hom import core, find_homomorphism, hom_equivalent, is_contained
from .model import (Hypergraph, Instance, Signature, Structure, hypergraph_of,
                    parse_hypergraph, parse_structure)
from .semantic import scv_repair, semantic_hw, semantic_width
from .solver import solve_bruteforce, solve_decomposed
from .ucq import Ucq, make_nonredundant, solve_ucq, ucq_equivalent

__version__ = "0.1.0"
