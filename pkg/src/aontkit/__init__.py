"""Toolkit for all-or-nothing transforms over small finite fields:
construction, combinatorial verification, and exhaustive search."""

__version__ = "0.1.0"

from .arrays import (
    APPLY_FORWARD,
    APPLY_INVERSE,
    AontClaim,
    GFArray,
    TransformArray,
    VerificationReport,
    from_linear,
    is_unbiased,
    swap_halves,
    verify_oa,
    verify_range_aont,
    verify_rec_aont,
    verify_restricted_aont,
    verify_soa,
)
from .constructions import (
    DifferenceMatrix,
    cauchy,
    dm_to_matrix,
    doubly_parity_check,
    oa_rs,
    rs_restricted_doubly,
    rs_restricted_triply,
    strong_to_dm,
    triply_parity_check,
    vandermonde,
    vandermonde_all_nonzero,
    verify_dm,
)
from .field import (
    FieldElement,
    FieldSpec,
    discrete_log,
    make_field,
    make_field_of_order,
    multiplicative_order,
    primitive_element,
)
from .linalg import (
    MatrixGF,
    SubmatrixCheck,
    SubmatrixWitness,
    all_submatrices_invertible,
    determinant,
    invert,
    is_super_regular,
    normalize_scaling,
    shrink,
)
from .search import (
    BoundsReport,
    MaxStrongReport,
    SearchResult,
    analytic_bounds,
    bush_upper,
    exists_strong,
    max_strong,
    passes_range_criterion,
)

__all__ = [name for name in dir() if not name.startswith("_")]
