"""Nilpotent Jordan normal bases and Fitting decompositions.

A nilpotent endomorphism organizes a basis into chains x_1 -> x_2 -> ...
-> x_k -> 0; the chain lengths (block sizes) are determined by the ranks
of the powers of the matrix, which gives an oracle (`rank_partition`)
independent of the chain construction itself.  The Fitting decomposition
splits any square matrix into an invertible part on im(A^t) and a
nilpotent part on ker(A^t) once the rank sequence stabilizes.
"""

from dataclasses import dataclass

from .fields import PrimeField
from .linalg import (
    ExactMatrix,
    ShapeError,
    SpanReducer,
    Subspace,
    image_basis,
    kernel_basis,
    mat_vec,
    rank,
    rref,
    solve_matrix,
)


class NotNilpotentError(ValueError):
    """The matrix is not nilpotent; reports where the rank sequence stabilizes."""

    def __init__(self, stable_power: int, stable_rank: int):
        self.stable_power = stable_power
        self.stable_rank = stable_rank
        super().__init__(
            f"matrix is not nilpotent: rank(A^{stable_power}) = rank(A^{stable_power + 1})"
            f" = {stable_rank} > 0"
        )


class NotInvariantError(ValueError):
    """The given subspace is not invariant under the matrix."""


def _require_square(A: ExactMatrix):
    if A.nrows != A.ncols:
        raise ShapeError(f"expected a square matrix, got {A.shape}")


def power_ranks(A: ExactMatrix) -> list[int]:
    """Ranks [rank(A^0), rank(A^1), ...] up to and including the first repeat."""
    _require_square(A)
    ranks = [A.nrows]
    B = A
    while True:
        r = rank(B)
        ranks.append(r)
        if r == ranks[-2]:
            return ranks
        B = B @ A


def nilpotency_index(A: ExactMatrix) -> int | None:
    """Smallest n with A^n = 0 (then n <= dim), or None if A is not nilpotent."""
    ranks = power_ranks(A)
    if ranks[-1] != 0:
        return None
    # ranks strictly decrease until hitting 0; the first zero is at the index
    return next(j for j, r in enumerate(ranks) if r == 0)


def rank_partition(A: ExactMatrix) -> list[int]:
    """Block sizes of a nilpotent matrix computed from ranks of powers only.

    The number of blocks of size >= j equals rank(A^(j-1)) - rank(A^j); this
    determines the multiset of sizes and serves as the oracle for
    `jordan_base`.  Raises NotNilpotentError for non-nilpotent input.
    """
    ranks = power_ranks(A)
    if ranks[-1] != 0:
        raise NotNilpotentError(len(ranks) - 2, ranks[-1])
    n = next(j for j, r in enumerate(ranks) if r == 0)
    blocks_ge = [ranks[j - 1] - ranks[j] for j in range(1, n + 1)]
    sizes: list[int] = []
    for j in range(n, 0, -1):
        exactly = blocks_ge[j - 1] - (blocks_ge[j] if j < n else 0)
        sizes.extend([j] * exactly)
    return sizes


@dataclass(frozen=True)
class JordanBase:
    """Chain basis data: sizes k_1 >= ... >= k_m, base-change matrix, index.

    The base_change columns, grouped by block, are the chain vectors; the
    generating matrix maps each chain vector to the next and the last one
    of each chain to zero.
    """

    block_sizes: tuple[int, ...]
    base_change: ExactMatrix
    nilpotency_index: int

    @property
    def block_count(self) -> int:
        return len(self.block_sizes)

    @property
    def dim(self) -> int:
        return sum(self.block_sizes)

    def block_offsets(self) -> list[int]:
        offs = [0]
        for k in self.block_sizes:
            offs.append(offs[-1] + k)
        return offs[:-1]

    def chain_columns(self, block: int) -> list[tuple]:
        off = self.block_offsets()[block]
        return [self.base_change.column(off + i) for i in range(self.block_sizes[block])]

    def to_json_dict(self, entry) -> dict:
        return {
            "block_sizes": list(self.block_sizes),
            "base_change": [[entry(x) for x in row] for row in self.base_change.rows],
            "index": self.nilpotency_index,
        }


def jordan_base(A: ExactMatrix) -> JordanBase:
    """Construct a chain basis for a nilpotent matrix.

    Top-down greedy: for j = n down to 1, new chain tops of height j are
    taken from ker(A^j), extending ker(A^(j-1)) + A * (span of the chains
    already chosen); candidates are the canonical kernel basis vectors in
    order of their leading coordinate, so the construction is deterministic
    with smallest-index tie-breaking.
    """
    _require_square(A)
    d = A.nrows
    sizes_oracle = rank_partition(A)  # raises NotNilpotentError if needed
    n = sizes_oracle[0] if sizes_oracle else 0
    field = A.field

    powers = [ExactMatrix.identity(field, d)]
    for _ in range(n):
        powers.append(powers[-1] @ A)
    kernels = [kernel_basis(powers[j]) for j in range(n + 1)]

    chains: list[list[tuple]] = []
    for j in range(n, 0, -1):
        reducer = SpanReducer(field)
        for col in range(kernels[j - 1].dim):
            reducer.add(kernels[j - 1].basis.column(col))
        for chain in chains:
            for vec in chain[1:]:
                reducer.add(vec)
        for col in range(kernels[j].dim):
            cand = kernels[j].basis.column(col)
            if reducer.add(cand):
                chain = [cand]
                for _ in range(j - 1):
                    chain.append(mat_vec(A, chain[-1]))
                chains.append(chain)

    sizes = tuple(len(c) for c in chains)
    columns = [v for chain in chains for v in chain]
    base_change = ExactMatrix.from_columns(field, columns, d)
    jb = JordanBase(sizes, base_change, n)
    if sorted(sizes) != sorted(sizes_oracle) or not verify_jordan_base(A, jb):
        raise RuntimeError("internal error: chain construction failed verification")
    return jb


def verify_jordan_base(A: ExactMatrix, jb: JordanBase) -> bool:
    """Re-check every structural claim of a JordanBase against its matrix."""
    d = A.nrows
    if A.ncols != d or jb.dim != d:
        return False
    if any(a < b for a, b in zip(jb.block_sizes, jb.block_sizes[1:])):
        return False
    if rank(jb.base_change) != d:
        return False
    ends = []
    for b in range(jb.block_count):
        cols = jb.chain_columns(b)
        for i in range(len(cols) - 1):
            if mat_vec(A, cols[i]) != cols[i + 1]:
                return False
        last = mat_vec(A, cols[-1])
        if any(not A.field.is_zero(x) for x in last):
            return False
        ends.append(cols[-1])
    ker = kernel_basis(A)
    if jb.block_count != ker.dim:
        return False
    if Subspace.from_spanning(A.field, d, ends) != ker:
        return False
    if jb.nilpotency_index != (max(jb.block_sizes) if jb.block_sizes else 0):
        return False
    return True


@dataclass(frozen=True)
class FittingDecomposition:
    """M = V + W with V = im(A^t), W = ker(A^t), W split as W1 + W2.

    t is the smallest exponent >= 1 at which the rank sequence stabilizes;
    W1 is spanned by the chain tops of the nilpotent part, W2 by the rest
    of the chain vectors, so A maps W onto W2 and dim W1 = dim ker A.
    """

    t: int
    V: Subspace
    W: Subspace
    W1: Subspace
    W2: Subspace
    nilpotent_part: ExactMatrix


def restrict(A: ExactMatrix, S: Subspace) -> ExactMatrix:
    """Matrix of A restricted to the invariant subspace S, in the basis of S."""
    if A.ncols != S.ambient_dim:
        raise ShapeError("restrict: ambient dimension mismatch")
    image = A @ S.basis
    X = solve_matrix(S.basis, image)
    if X is None:
        raise NotInvariantError("subspace is not invariant under the matrix")
    return X


def fitting_decomposition(A: ExactMatrix) -> FittingDecomposition:
    """Split M into the invertible part im(A^t) and nilpotent part ker(A^t)."""
    _require_square(A)
    d = A.nrows
    field = A.field
    ranks = power_ranks(A)
    # ranks has the first repeated value at the end; t >= 1
    t = max(1, len(ranks) - 2)
    At = A.pow(t)
    V = image_basis(At)
    W = kernel_basis(At)
    nil = restrict(A, W)
    jb = jordan_base(nil)
    offs = jb.block_offsets()
    top_cols = set(offs)
    tops, rest = [], []
    for c in range(jb.dim):
        vec = mat_vec(W.basis, jb.base_change.column(c))
        (tops if c in top_cols else rest).append(vec)
    W1 = Subspace.from_spanning(field, d, tops)
    W2 = Subspace.from_spanning(field, d, rest)
    return FittingDecomposition(t, V, W, W1, W2, nil)


def verify_fitting(A: ExactMatrix, fd: FittingDecomposition) -> bool:
    """Re-check the structural claims of a FittingDecomposition."""
    from .linalg import direct_sum_check, subspace_leq

    d = A.nrows
    field = A.field
    if not direct_sum_check([fd.V, fd.W], expected_total=d):
        return False
    # A maps V onto V
    if Subspace.from_matrix_columns(A @ fd.V.basis) != fd.V:
        return False
    # A maps W into W and acts nilpotently there
    if not subspace_leq(Subspace.from_matrix_columns(A @ fd.W.basis), fd.W):
        return False
    if fd.W.dim and nilpotency_index(fd.nilpotent_part) is None:
        return False
    if not direct_sum_check([fd.W1, fd.W2], expected_total=fd.W.dim):
        return False
    if Subspace.from_matrix_columns(A @ fd.W.basis) != fd.W2:
        return False
    ker = kernel_basis(A)
    if fd.W1.dim != ker.dim:
        return False
    if not subspace_leq(ker, fd.W):
        return False
    if fd.t < 1 or fd.t > max(1, d):
        return False
    return True
