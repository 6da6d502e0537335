import pytest

from cenalg import (
    BlockProfile,
    ExactMatrix,
    NotInvariantError,
    NotNilpotentError,
    PrimeField,
    QQ,
    Subspace,
    direct_sum_check,
    fitting_decomposition,
    inverse,
    jordan_base,
    nilpotency_index,
    rank_partition,
    restrict,
    verify_fitting,
    verify_jordan_base,
)
from conftest import random_exact_matrix, seeded


def E(field, rows):
    return ExactMatrix.from_rows(field, rows)


def shift_block(field, k):
    return BlockProfile((k,), field).canonical_nilpotent()


def random_conjugated_nilpotent(field, sizes, rng):
    A = BlockProfile(sizes, field).canonical_nilpotent()
    n = sum(sizes)
    while True:
        S = random_exact_matrix(field, n, n, rng)
        from cenalg import rank

        if rank(S) == n:
            return S @ A @ inverse(S)


# -- nilpotency index ------------------------------------------------------------


def test_index_of_zero_matrix(gf5):
    assert nilpotency_index(ExactMatrix.zeros(gf5, 3, 3)) == 1


def test_index_of_identity_is_none(gf5):
    assert nilpotency_index(ExactMatrix.identity(gf5, 3)) is None


def test_index_of_single_block(qq):
    assert nilpotency_index(shift_block(qq, 3)) == 3


# -- rank partition ----------------------------------------------------------------


def test_rank_partition_zero(gf3):
    assert rank_partition(ExactMatrix.zeros(gf3, 2, 2)) == [1, 1]


def test_rank_partition_mixed(qq):
    A = E(qq, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    assert rank_partition(A) == [2, 1]


def test_rank_partition_single_block(gf5):
    assert rank_partition(shift_block(gf5, 4)) == [4]


def test_rank_partition_rejects_non_nilpotent(gf5):
    with pytest.raises(NotNilpotentError) as exc:
        rank_partition(ExactMatrix.identity(gf5, 2))
    assert exc.value.stable_rank == 2


# -- jordan base ----------------------------------------------------------------------


def test_jordan_zero_matrix(gf2):
    jb = jordan_base(ExactMatrix.zeros(gf2, 2, 2))
    assert jb.block_sizes == (1, 1)
    assert jb.base_change == ExactMatrix.identity(gf2, 2)


def test_jordan_single_chain(qq):
    A = E(qq, [[0, 0], [1, 0]])
    jb = jordan_base(A)
    assert jb.block_sizes == (2,)
    assert jb.base_change.column(0) == (1, 0)
    assert jb.base_change.column(1) == (0, 1)


def test_jordan_two_blocks(qq):
    A = E(qq, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    jb = jordan_base(A)
    assert jb.block_sizes == (2, 1)
    assert verify_jordan_base(A, jb)


def test_jordan_rejects_non_nilpotent(gf3):
    with pytest.raises(NotNilpotentError):
        jordan_base(ExactMatrix.identity(gf3, 3))


@pytest.mark.parametrize("fname", ["gf3", "gf5", "qq"])
def test_jordan_random_conjugates(fname, request):
    field = request.getfixturevalue(fname)
    rng = seeded("jordan-random", fname)
    from cenalg.verify import partitions_of

    for n in range(1, 6):
        for sizes in partitions_of(n):
            A = random_conjugated_nilpotent(field, sizes, rng)
            jb = jordan_base(A)
            assert verify_jordan_base(A, jb)
            # block sizes agree with the rank oracle (and the construction)
            assert sorted(jb.block_sizes) == sorted(rank_partition(A))
            assert list(jb.block_sizes) == sorted(sizes, reverse=True)


def test_jordan_base_conjugates_to_canonical(gf5):
    # P^-1 A P is the canonical block-shift matrix of the sizes
    rng = seeded("jordan-conj")
    A = random_conjugated_nilpotent(gf5, (3, 2, 1), rng)
    jb = jordan_base(A)
    P = jb.base_change
    canonical = BlockProfile(jb.block_sizes, gf5).canonical_nilpotent()
    assert inverse(P) @ A @ P == canonical


# -- restrict -----------------------------------------------------------------------


def test_restrict_to_full_space(gf5):
    A = random_exact_matrix(gf5, 3, 3, seeded("restrict"))
    assert restrict(A, Subspace.full(gf5, 3)) == A


def test_restrict_identity(qq):
    S = Subspace.from_spanning(qq, 3, [(1, 0, 2), (0, 1, 1)])
    got = restrict(ExactMatrix.identity(qq, 3), S)
    assert got == ExactMatrix.identity(qq, 2)


def test_restrict_invariant_block(qq):
    A = E(qq, [[1, 0, 0], [0, 0, 0], [0, 1, 0]])  # diag(1) + shift on e2->e3
    S = Subspace.from_spanning(qq, 3, [(0, 1, 0), (0, 0, 1)])
    assert restrict(A, S) == E(qq, [[0, 0], [1, 0]])


def test_restrict_non_invariant_raises(qq):
    A = E(qq, [[0, 1], [1, 0]])
    S = Subspace.from_spanning(qq, 2, [(1, 0)])
    with pytest.raises(NotInvariantError):
        restrict(A, S)


# -- fitting ---------------------------------------------------------------------------


def test_fitting_identity(gf5):
    fd = fitting_decomposition(ExactMatrix.identity(gf5, 3))
    assert fd.t == 1
    assert fd.V == Subspace.full(gf5, 3)
    assert fd.W.dim == 0


def test_fitting_nilpotent(gf5):
    A = shift_block(gf5, 3)
    fd = fitting_decomposition(A)
    assert fd.V.dim == 0 and fd.W == Subspace.full(gf5, 3)
    assert fd.nilpotent_part.nrows == 3


def test_fitting_mixed_example(qq):
    # diag(1) plus a 2-chain on e2 -> e3
    A = E(qq, [[1, 0, 0], [0, 0, 0], [0, 1, 0]])
    fd = fitting_decomposition(A)
    assert fd.t == 2
    assert fd.V == Subspace.from_spanning(qq, 3, [(1, 0, 0)])
    assert fd.W == Subspace.from_spanning(qq, 3, [(0, 1, 0), (0, 0, 1)])
    assert fd.W1 == Subspace.from_spanning(qq, 3, [(0, 1, 0)])
    assert fd.W2 == Subspace.from_spanning(qq, 3, [(0, 0, 1)])
    assert verify_fitting(A, fd)


@pytest.mark.parametrize("fname", ["gf2", "gf5", "qq"])
def test_fitting_random(fname, request):
    field = request.getfixturevalue(fname)
    rng = seeded("fitting-random", fname)
    for trial in range(30):
        n = rng.randint(1, 5)
        A = random_exact_matrix(field, n, n, rng)
        fd = fitting_decomposition(A)
        assert verify_fitting(A, fd)
        assert direct_sum_check([fd.V, fd.W], expected_total=n)


def test_jordan_json_shape(gf2):
    jb = jordan_base(ExactMatrix.zeros(gf2, 2, 2))
    d = jb.to_json_dict(lambda x: x)
    assert d == {"block_sizes": [1, 1], "base_change": [[1, 0], [0, 1]], "index": 1}
