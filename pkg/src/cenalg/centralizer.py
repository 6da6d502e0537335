"""Centralizers, zero-level centralizers and level spans as explicit subspaces.

Cen(A) and Cen0(A) are computed as kernels of explicit exact linear systems
obtained by flattening the unknown matrix X row-major: XA - AX = 0 gives an
n^2 x n^2 system, AX = 0 stacked on XA = 0 gives a 2n^2 x n^2 one.  The
resulting bases are canonical (column-reduced echelon on the flattened
vectors), so span-level comparison is representation equality.
"""

from dataclasses import dataclass

import numpy as np

from .fields import PrimeField
from .linalg import (
    ExactMatrix,
    ShapeError,
    Subspace,
    hstack,
    image_basis,
    kernel_basis,
    subspace_leq,
    vstack,
)

DEFAULT_MAX_DIM = 12


class SizeBoundError(ValueError):
    """Matrix size exceeds the configured bound for the n^2-unknown systems."""

    def __init__(self, n: int, bound: int):
        super().__init__(f"matrix size {n} exceeds the configured bound {bound}")


def _require_square(A: ExactMatrix, max_dim: int):
    if A.nrows != A.ncols:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    if A.nrows > max_dim:
        raise SizeBoundError(A.nrows, max_dim)


def _right_mul_system(A: ExactMatrix) -> ExactMatrix:
    """Matrix of X -> XA on row-major flattened X."""
    n = A.nrows
    field = A.field
    if isinstance(field, PrimeField):
        out = np.kron(np.eye(n, dtype=np.int64), A._as_np().T)
        return ExactMatrix(field, out.tolist(), n * n)
    zero = field.zero
    rows = []
    for i in range(n):
        for j in range(n):
            row = [zero] * (n * n)
            for k in range(n):
                row[i * n + k] = A.rows[k][j]
            rows.append(row)
    return ExactMatrix(field, rows, n * n)


def _left_mul_system(A: ExactMatrix) -> ExactMatrix:
    """Matrix of X -> AX on row-major flattened X."""
    n = A.nrows
    field = A.field
    if isinstance(field, PrimeField):
        out = np.kron(A._as_np(), np.eye(n, dtype=np.int64))
        return ExactMatrix(field, out.tolist(), n * n)
    zero = field.zero
    rows = []
    for i in range(n):
        for j in range(n):
            row = [zero] * (n * n)
            for k in range(n):
                row[k * n + j] = A.rows[i][k]
            rows.append(row)
    return ExactMatrix(field, rows, n * n)


def _unflatten_kernel(S: Subspace, n: int) -> list[ExactMatrix]:
    field = S.field
    return [
        ExactMatrix.from_flat(field, S.basis.column(c), n, n) for c in range(S.dim)
    ]


def matrix_span(mats: list[ExactMatrix], n: int, field) -> Subspace:
    """Canonical subspace of flattened n x n matrices spanned by the given ones."""
    return Subspace.from_spanning(field, n * n, [M.flatten() for M in mats])


def cen_basis(A: ExactMatrix, max_dim: int = DEFAULT_MAX_DIM) -> list[ExactMatrix]:
    """Canonical basis of {X : XA = AX}."""
    _require_square(A, max_dim)
    system = _right_mul_system(A) - _left_mul_system(A)
    return _unflatten_kernel(kernel_basis(system), A.nrows)


def cen0_basis(A: ExactMatrix, max_dim: int = DEFAULT_MAX_DIM) -> list[ExactMatrix]:
    """Canonical basis of the two-sided annihilator {X : AX = 0 and XA = 0}."""
    _require_square(A, max_dim)
    system = vstack(_left_mul_system(A), _right_mul_system(A))
    return _unflatten_kernel(kernel_basis(system), A.nrows)


def lcen_basis(A: ExactMatrix, max_dim: int = DEFAULT_MAX_DIM) -> list[ExactMatrix]:
    """Canonical basis of the span of achievable levels {U A : U in Cen(A)}."""
    cen = cen_basis(A, max_dim)
    span = matrix_span([U @ A for U in cen], A.nrows, A.field)
    return _unflatten_kernel(span, A.nrows)


@dataclass(frozen=True)
class DimFormulaResult:
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def check_dim_formula(A: ExactMatrix, max_dim: int = DEFAULT_MAX_DIM) -> DimFormulaResult:
    """Compare dim Cen0(A) against (dim ker A)^2; they agree for every A."""
    lhs = len(cen0_basis(A, max_dim))
    rhs = kernel_basis(A).dim ** 2
    return DimFormulaResult(lhs, rhs)


@dataclass(frozen=True)
class ContainmentResult:
    direct: bool
    criterion: bool

    @property
    def agree(self) -> bool:
        return self.direct == self.criterion


def cen0_containment(
    A: ExactMatrix, B: ExactMatrix, max_dim: int = DEFAULT_MAX_DIM
) -> ContainmentResult:
    """Cen0(A) <= Cen0(B), tested directly and by the kernel/image criterion.

    direct: every basis element C of Cen0(A) satisfies BC = CB = 0;
    criterion: ker(A) <= ker(B) and im(B) <= im(A).  The two always agree.
    """
    if A.shape != B.shape or A.field != B.field:
        raise ShapeError("cen0_containment needs same-shape, same-field matrices")
    direct = all(
        (B @ C).is_zero() and (C @ B).is_zero() for C in cen0_basis(A, max_dim)
    )
    criterion = subspace_leq(kernel_basis(A), kernel_basis(B)) and subspace_leq(
        image_basis(B), image_basis(A)
    )
    return ContainmentResult(direct, criterion)


@dataclass(frozen=True)
class DoubleZeroReport:
    """The three equivalent forms of Cen0(A) <= Cen0(B) for matrices."""

    cond1: bool  # direct: B annihilates Cen0(A) on both sides
    cond2: bool  # ker(A) <= ker(B) and ker(A^T) <= ker(B^T)
    cond3: bool  # im(B) <= im(A) and im(B^T) <= im(A^T)

    @property
    def equivalent(self) -> bool:
        return self.cond1 == self.cond2 == self.cond3

    def to_json_dict(self) -> dict:
        return {
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "equivalent": self.equivalent,
        }


def double_zero_centralizer_check(
    A: ExactMatrix, B: ExactMatrix, max_dim: int = DEFAULT_MAX_DIM
) -> DoubleZeroReport:
    if A.shape != B.shape or A.field != B.field:
        raise ShapeError("double_zero_centralizer_check needs same-shape, same-field matrices")
    cond1 = all(
        (B @ C).is_zero() and (C @ B).is_zero() for C in cen0_basis(A, max_dim)
    )
    At, Bt = A.T, B.T
    cond2 = subspace_leq(kernel_basis(A), kernel_basis(B)) and subspace_leq(
        kernel_basis(At), kernel_basis(Bt)
    )
    cond3 = subspace_leq(image_basis(B), image_basis(A)) and subspace_leq(
        image_basis(Bt), image_basis(At)
    )
    return DoubleZeroReport(cond1, cond2, cond3)
