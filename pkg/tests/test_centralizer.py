import math

import pytest

from cenalg import (
    BlockProfile,
    ExactMatrix,
    PrimeField,
    QQ,
    ShapeError,
    SizeBoundError,
    cen0_basis,
    cen0_containment,
    cen_basis,
    check_dim_formula,
    double_zero_centralizer_check,
    kernel_basis,
    lcen_basis,
)
from cenalg.centralizer import matrix_span
from conftest import (
    brute_annihilator_count,
    brute_commutant_count,
    random_exact_matrix,
    seeded,
)


def E(field, rows):
    return ExactMatrix.from_rows(field, rows)


def j2_plus_zero(field):
    return E(field, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])


# -- cen ------------------------------------------------------------------------


def test_cen_of_zero_and_identity(gf5):
    for A in (ExactMatrix.zeros(gf5, 3, 3), ExactMatrix.identity(gf5, 3)):
        basis = cen_basis(A)
        assert len(basis) == 9
        for C in basis:
            assert C @ A == A @ C


def test_cen_block_example(qq):
    assert len(cen_basis(j2_plus_zero(qq))) == 5  # sum of min(k_d, k_g) = 2+1+1+1


def test_cen_matches_brute_force_over_gf2(gf2):
    rng = seeded("cen-brute")
    for trial in range(12):
        A = random_exact_matrix(gf2, 3, 3, rng)
        assert 2 ** len(cen_basis(A)) == brute_commutant_count(A)


# -- cen0 -----------------------------------------------------------------------------


def test_cen0_of_zero(gf2):
    assert len(cen0_basis(ExactMatrix.zeros(gf2, 2, 2))) == 4


def test_cen0_of_identity(gf5):
    assert len(cen0_basis(ExactMatrix.identity(gf5, 2))) == 0


def test_cen0_shift(qq):
    A = E(qq, [[0, 0], [1, 0]])
    basis = cen0_basis(A)
    assert len(basis) == 1
    assert basis[0] == A  # the only annihilating direction is E21 = A itself


def test_cen0_matches_brute_force_over_gf2(gf2):
    rng = seeded("cen0-brute")
    for trial in range(12):
        A = random_exact_matrix(gf2, 3, 3, rng)
        assert 2 ** len(cen0_basis(A)) == brute_annihilator_count(A)


def test_cen0_inside_cen(gf3):
    rng = seeded("cen0-sub")
    for trial in range(10):
        A = random_exact_matrix(gf3, 4, 4, rng)
        cen_span = matrix_span(cen_basis(A), 4, gf3)
        for C in cen0_basis(A):
            assert cen_span.contains(C.flatten())


def test_ideal_property(gf3):
    # products of centralizer elements with annihilator elements stay annihilating
    rng = seeded("ideal")
    for trial in range(8):
        A = random_exact_matrix(gf3, 3, 3, rng)
        cen0 = cen0_basis(A)
        span0 = matrix_span(cen0, 3, gf3)
        for U in cen_basis(A):
            for C in cen0:
                assert span0.contains((U @ C).flatten())
                assert span0.contains((C @ U).flatten())


# -- dimension formula -------------------------------------------------------------------


def test_dim_formula_zero(gf3):
    r = check_dim_formula(ExactMatrix.zeros(gf3, 3, 3))
    assert (r.lhs, r.rhs, r.ok) == (9, 9, True)


def test_dim_formula_single_block(qq):
    A = BlockProfile((4,), qq).canonical_nilpotent()
    r = check_dim_formula(A)
    assert (r.lhs, r.rhs, r.ok) == (1, 1, True)
    # the one annihilating direction is the top power of the shift
    assert cen0_basis(A)[0] == A.pow(3)


def test_dim_formula_block_example(qq):
    r = check_dim_formula(j2_plus_zero(qq))
    assert (r.lhs, r.rhs, r.ok) == (4, 4, True)


@pytest.mark.parametrize("fname", ["gf2", "gf5", "qq"])
def test_dim_formula_random(fname, request):
    field = request.getfixturevalue(fname)
    rng = seeded("dimformula", fname)
    for trial in range(25):
        n = rng.randint(1, 5)
        assert check_dim_formula(random_exact_matrix(field, n, n, rng)).ok


# -- lcen ---------------------------------------------------------------------------------


def test_lcen_examples(gf5):
    assert len(lcen_basis(ExactMatrix.zeros(gf5, 2, 2))) == 0
    assert len(lcen_basis(ExactMatrix.identity(gf5, 2))) == 4
    assert len(lcen_basis(j2_plus_zero(gf5))) == 1


def test_lcen_dimension_difference(gf3, qq):
    for field in (gf3, qq):
        rng = seeded("lcen-dim", str(field))
        for trial in range(10):
            n = rng.randint(1, 4)
            A = random_exact_matrix(field, n, n, rng)
            assert len(lcen_basis(A)) == len(cen_basis(A)) - len(cen0_basis(A))


# -- containment ---------------------------------------------------------------------------


def test_containment_reflexive(gf3):
    A = random_exact_matrix(gf3, 3, 3, seeded("contain-refl"))
    r = cen0_containment(A, A)
    assert r.direct and r.criterion and r.agree


def test_containment_shift_example(qq):
    A = E(qq, [[0, 0], [1, 0]])
    r = cen0_containment(A, A)
    assert (r.direct, r.criterion) == (True, True)
    B = ExactMatrix.identity(qq, 2)  # B e2 != 0, so ker A not inside ker B
    r = cen0_containment(A, B)
    assert (r.direct, r.criterion) == (False, False)


def test_containment_random_agreement(gf3):
    rng = seeded("contain-rand")
    for trial in range(60):
        n = rng.randint(1, 4)
        A = random_exact_matrix(gf3, n, n, rng)
        B = random_exact_matrix(gf3, n, n, rng)
        assert cen0_containment(A, B).agree


def test_containment_forced_pairs(gf3):
    # B = A X A satisfies ker A <= ker B and im B <= im A by construction
    rng = seeded("contain-forced")
    for trial in range(40):
        n = rng.randint(1, 4)
        A = random_exact_matrix(gf3, n, n, rng)
        B = A @ random_exact_matrix(gf3, n, n, rng) @ A
        r = cen0_containment(A, B)
        assert r.criterion and r.direct


def test_containment_shape_mismatch(gf3):
    with pytest.raises(ShapeError):
        cen0_containment(ExactMatrix.zeros(gf3, 2, 2), ExactMatrix.zeros(gf3, 3, 3))


# -- double zero-centralizer report ------------------------------------------------------------


def test_double_zero_identity_pair(qq):
    I2 = ExactMatrix.identity(qq, 2)
    rep = double_zero_centralizer_check(I2, I2)
    assert rep.cond1 and rep.cond2 and rep.cond3 and rep.equivalent


def test_double_zero_zero_vs_identity(qq):
    rep = double_zero_centralizer_check(
        ExactMatrix.zeros(qq, 2, 2), ExactMatrix.identity(qq, 2)
    )
    assert (rep.cond1, rep.cond2, rep.cond3) == (False, False, False)
    assert rep.equivalent


def test_double_zero_random_equivalence(gf3):
    rng = seeded("dz-rand")
    for trial in range(60):
        A = random_exact_matrix(gf3, 3, 3, rng)
        B = random_exact_matrix(gf3, 3, 3, rng)
        assert double_zero_centralizer_check(A, B).equivalent


def test_double_zero_json_keys(gf3):
    rep = double_zero_centralizer_check(
        ExactMatrix.zeros(gf3, 2, 2), ExactMatrix.zeros(gf3, 2, 2)
    )
    assert rep.to_json_dict() == {
        "cond1": True,
        "cond2": True,
        "cond3": True,
        "equivalent": True,
    }


# -- bounds -------------------------------------------------------------------------------------


def test_size_bound(gf2):
    big = ExactMatrix.zeros(gf2, 13, 13)
    with pytest.raises(SizeBoundError):
        cen_basis(big)
    assert len(cen0_basis(big, max_dim=13)) == 169


def test_fitting_route_dimension(gf5):
    # dim of the annihilator equals dim(W1) * dim(ker), through the splitting
    from cenalg import fitting_decomposition

    rng = seeded("fitting-dim")
    for trial in range(15):
        n = rng.randint(1, 5)
        A = random_exact_matrix(gf5, n, n, rng)
        fd = fitting_decomposition(A)
        assert fd.W1.dim * kernel_basis(A).dim == len(cen0_basis(A))
