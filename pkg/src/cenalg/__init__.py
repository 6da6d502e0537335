"""Exact centralizer algebra toolkit.

Exact linear algebra over GF(p) and the rationals; nilpotent chain bases
and Fitting decompositions; centralizer, two-sided-annihilator and level
spans of square matrices; truncated polynomial matrix models of those
algebras; and a noncommutative polynomial-identity engine with a seeded
verification suite.
"""

from .fields import (
    Field,
    FieldError,
    PrimeField,
    QQ,
    RationalField,
    field_from_name,
)
from .linalg import (
    ExactMatrix,
    ParseError,
    Rref,
    ShapeError,
    Subspace,
    direct_sum_check,
    format_matrix,
    image_basis,
    inverse,
    kernel_basis,
    mat_vec,
    parse_matrix,
    rank,
    rref,
    solve,
    solve_matrix,
    subspace_leq,
    subspace_sum,
)
from .jordan import (
    FittingDecomposition,
    JordanBase,
    NotInvariantError,
    NotNilpotentError,
    fitting_decomposition,
    jordan_base,
    nilpotency_index,
    rank_partition,
    restrict,
    verify_fitting,
    verify_jordan_base,
)
from .centralizer import (
    ContainmentResult,
    DimFormulaResult,
    DoubleZeroReport,
    SizeBoundError,
    cen0_basis,
    cen0_containment,
    cen_basis,
    check_dim_formula,
    double_zero_centralizer_check,
    lcen_basis,
)
from .models import (
    BlockProfile,
    CEN_MODEL,
    CoefficientVector,
    MembershipError,
    ModelDims,
    QuotientModel,
    ResiduePattern,
    TRUNCATION,
    TruncPolyMatrix,
    ZERO_LEVEL,
    cen_model_basis,
    centralizer_residue,
    chain_combination,
    format_poly_matrix,
    induced_endomorphism,
    membership,
    membership_offender,
    model_dims,
    parse_poly_matrix,
    residue_projection,
    zero_level_model_basis,
    zero_level_residue,
)
from .identities import (
    BudgetExceededError,
    IdentityVerdict,
    MatrixAlgebra,
    NCPoly,
    ProductCheckReport,
    check_quotient_product_identity,
    check_zero_level_product_identity,
    commutator,
    default_quotient_factor,
    default_zero_level_factor,
    evaluate,
    is_identity,
    library,
    pattern_algebra,
    product_identity,
    standard_polynomial,
)

__version__ = "0.1.0"
