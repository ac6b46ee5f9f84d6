"""Compositional inverses of AGW-type permutation polynomials over finite fields."""

from ._jit import BACKEND
from .additive import (
    G0Form,
    LinearizedForm,
    TranslatorForm,
    additive_square,
    check_translator,
    invert_add_general,
    invert_g0_form,
    invert_linearized_form,
    invert_translator_form,
)
from .branch import (
    BranchSystem,
    TwoBranchForm,
    assemble_branch_inverse,
    check_two_branch_pp,
    coset_characteristic,
    count_two_branch_pps,
    invert_two_branch,
)
from .cyclotomic import CyclotomicSys, coset_index
from .diagram import AgwSquare, agw_is_pp, build_bar_lambda, dual_square_verify, induced_h, verify_square
from .field import FieldCtx, get_field, parse_field_spec
from .linearized import LinearizedPoly, Tower, linearized_inverse, linearized_matrix
from .mult import (
    GeneralMultForm,
    IndexForm,
    check_index_pp,
    g_inverse_identity_holds,
    invert_hybrid_xh,
    invert_index_ab,
    invert_index_b,
    invert_mult_general,
)
from .oracle import brute_inverse, is_permutation, oracle_inverse_poly
from .pointmap import PointMap
from .poly import Poly, lagrange_interpolate, parse_poly

__version__ = "0.1.0"
