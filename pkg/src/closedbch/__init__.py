"""Closed-form Baker-Campbell-Hausdorff products with independent verification."""

from .algebra import Algebra, Generator, LieElement, Root, build_algebra, commutator, commutator_table, load_algebra
from .closed_forms import (
    cartan_weyl_pair,
    ee_pair,
    ehe_split,
    ehe_type5,
    epm_sandwich,
    he_pair,
    heh_triple,
    sl2_triple,
)
from .commutators import (
    JacobiSolutionFamily,
    PairParams,
    TripleParams,
    TypeTag,
    check_jacobi,
    classify,
    solve_jacobi,
)
from .engine import bch_pair, bch_pair_lemma1, bch_triple, find_witness, solve_alpha
from .kernel import f_kernel, f_limit, ghl_coeffs, s_kernel
from .oracle import abstract_closure, dynkin_bch, mat_exp, mat_log, verify_dynkin, verify_product
from .results import AlphaSolution, BCHResult, TildeParams

__all__ = [
    "Algebra",
    "AlphaSolution",
    "BCHResult",
    "Generator",
    "JacobiSolutionFamily",
    "LieElement",
    "PairParams",
    "Root",
    "TildeParams",
    "TripleParams",
    "TypeTag",
    "abstract_closure",
    "bch_pair",
    "bch_pair_lemma1",
    "bch_triple",
    "build_algebra",
    "cartan_weyl_pair",
    "check_jacobi",
    "classify",
    "commutator",
    "commutator_table",
    "dynkin_bch",
    "ee_pair",
    "ehe_split",
    "ehe_type5",
    "epm_sandwich",
    "f_kernel",
    "f_limit",
    "find_witness",
    "ghl_coeffs",
    "he_pair",
    "heh_triple",
    "load_algebra",
    "mat_exp",
    "mat_log",
    "s_kernel",
    "sl2_triple",
    "solve_alpha",
    "solve_jacobi",
    "verify_dynkin",
    "verify_product",
]

__version__ = "0.1.0"
