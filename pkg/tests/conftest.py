"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's reduction backends:
`oracle_rref` is a plain textbook elimination over the field interface,
and the brute_* helpers enumerate GF(2) objects exhaustively.  Expected
values frozen in the tests were computed with these.
"""

import itertools
import random

import pytest

from cenalg import ExactMatrix, PrimeField, QQ


@pytest.fixture
def gf2():
    return PrimeField(2)


@pytest.fixture
def gf3():
    return PrimeField(3)


@pytest.fixture
def gf5():
    return PrimeField(5)


@pytest.fixture
def qq():
    return QQ


def oracle_rref(field, rows):
    """Textbook row reduction over the field interface (independent oracle)."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if not field.is_zero(mat[i][c])), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat, pivots


def random_exact_matrix(field, nrows, ncols, rng):
    return ExactMatrix(
        field, [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)], ncols
    )


def seeded(*path):
    return random.Random(":".join(str(p) for p in path))


def all_gf2_matrices(n):
    """Every n x n matrix over GF(2)."""
    field = PrimeField(2)
    for bits in itertools.product((0, 1), repeat=n * n):
        yield ExactMatrix.from_flat(field, bits, n, n)


def brute_commutant_count(A):
    """Number of X over GF(2) with XA = AX (exhaustive)."""
    return sum(1 for X in all_gf2_matrices(A.nrows) if X @ A == A @ X)


def brute_annihilator_count(A):
    """Number of X over GF(2) with AX = XA = 0 (exhaustive)."""
    return sum(
        1 for X in all_gf2_matrices(A.nrows) if (A @ X).is_zero() and (X @ A).is_zero()
    )
