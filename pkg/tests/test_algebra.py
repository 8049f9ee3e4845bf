import itertools

import numpy as np
import pytest

from homcat.algebra import (
    Algebra,
    PreconditionError,
    classify_algebra,
    exterior_two_vars,
    find_nontrivial_idempotent,
    is_commutative,
    opposite_algebra,
    preset_algebra,
    primitive_idempotents,
    radical_basis,
    radical_of_matrix_algebra,
    socle_basis,
    square_zero_plane,
    triangular_extension,
    truncated_poly,
    validate_algebra,
)
from homcat.linalg import Mat, in_span


def matrix_algebra(p, n):
    """Full matrix algebra M_n(F_p) as structure constants."""
    dim = n * n
    mul = np.zeros((dim, dim, dim), dtype=np.int64)
    for i1 in range(n):
        for j1 in range(n):
            for i2 in range(n):
                for j2 in range(n):
                    a = i1 * n + j1
                    b = i2 * n + j2
                    if j1 == i2:
                        mul[a][b][i1 * n + j2] = 1
    unit = np.zeros(dim, dtype=np.int64)
    for i in range(n):
        unit[i * n + i] = 1
    labels = ["E%d%d" % (i, j) for i in range(n) for j in range(n)]
    return Algebra(p, dim, labels, unit, mul)


def brute_force_radical(a):
    """J = {x : 1 - x*y invertible for all y}; exhaustive, tiny algebras only."""
    p, dim = a.p, a.dim
    elements = [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=dim)]
    rad = []
    for x in elements:
        ok = True
        for y in elements:
            one_minus = (a.unit - a.multiply(x, y)) % p
            if not a.is_unit_element(one_minus):
                ok = False
                break
        if ok:
            rad.append(x)
    basis = Mat(p, np.array(rad).T) if rad else Mat.zeros(p, dim, 0)
    return basis.column_space()


@pytest.mark.parametrize("alg,expect_rad_dim", [
    (truncated_poly(2, 2), 1),
    (truncated_poly(2, 3), 2),
    (truncated_poly(3, 2), 1),
    (square_zero_plane(2), 2),
    (exterior_two_vars(2), 3),
    (matrix_algebra(2, 2), 0),
])
def test_radical_against_bruteforce(alg, expect_rad_dim):
    rad = radical_basis(alg)
    assert rad.cols == expect_rad_dim
    brute = brute_force_radical(alg)
    assert brute.cols == rad.cols
    assert in_span(rad, brute) and in_span(brute, rad)


def test_radical_triangular_against_bruteforce():
    lam = triangular_extension(truncated_poly(2, 2))
    rad = radical_basis(lam)
    brute = brute_force_radical(lam)
    assert rad.cols == brute.cols == 4
    assert in_span(rad, brute) and in_span(brute, rad)


def test_friedl_ronyai_on_matrix_rep():
    # radical of a non-semisimple noncommutative matrix algebra: upper
    # triangular 2x2 over F_2 inside M_2
    p = 2
    mats = [
        np.array([[1, 0], [0, 0]], dtype=np.int64),
        np.array([[0, 0], [0, 1]], dtype=np.int64),
        np.array([[0, 1], [0, 0]], dtype=np.int64),
    ]
    rad = radical_of_matrix_algebra(p, mats)
    assert rad.cols == 1
    m = (mats[0] * int(rad.a[0, 0]) + mats[1] * int(rad.a[1, 0]) + mats[2] * int(rad.a[2, 0])) % p
    assert np.array_equal(m, mats[2])


def test_validate_valid_presets():
    for alg in (truncated_poly(2, 2), truncated_poly(2, 3), truncated_poly(3, 2),
                square_zero_plane(2), exterior_two_vars(2),
                triangular_extension(truncated_poly(2, 2))):
        assert validate_algebra(alg) == []


def test_validate_nonassociative_table():
    # basis 1, u, v with u*v = 1 but v*u = 0: (u*v)*u = u while u*(v*u) = 0
    mul = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        mul[0][j][j] = 1
        mul[j][0][j] = 1
    mul[1][2][0] = 1
    bad = Algebra(2, 3, ["1", "u", "v"], [1, 0, 0], mul)
    report = validate_algebra(bad)
    assert any("associativity" in f for f in report)


def test_validate_unit_failure():
    mul = np.zeros((2, 2, 2), dtype=np.int64)
    for j in range(2):
        mul[0][j][j] = 1
        mul[j][0][j] = 1
    bad = Algebra(2, 2, ["1", "x"], [0, 0], mul)
    report = validate_algebra(bad)
    assert any("unit" in f for f in report)


def test_classify_truncated_poly():
    cls = classify_algebra(truncated_poly(2, 2))
    assert cls.local and cls.gorenstein_local and cls.commutative
    assert cls.radical_basis.cols == 1 and cls.socle_basis.cols == 1
    # radical and socle are both span{x}
    x = Mat(2, [[0], [1]])
    assert in_span(cls.radical_basis, x) and in_span(cls.socle_basis, x)


def test_classify_square_zero_plane():
    cls = classify_algebra(square_zero_plane(2))
    assert cls.local and not cls.gorenstein_local
    assert cls.socle_basis.cols == 2


def test_classify_exterior():
    cls = classify_algebra(exterior_two_vars(2))
    assert cls.local and cls.gorenstein_local
    assert cls.socle_basis.cols == 1


def test_classify_triangular():
    lam = triangular_extension(truncated_poly(2, 2))
    cls = classify_algebra(lam)
    assert not cls.commutative and not cls.local
    assert len(cls.primitive_idempotents) == 2


def test_classify_matrix_algebra_idempotents():
    m2 = matrix_algebra(2, 2)
    cls = classify_algebra(m2)
    assert not cls.local
    assert cls.radical_basis.cols == 0
    assert len(cls.primitive_idempotents) == 2


def test_idempotents_field_is_local():
    # F_4 = F_2[t]/(t^2+t+1) is local (a field)
    mul = np.zeros((2, 2, 2), dtype=np.int64)
    mul[0][0][0] = 1
    mul[0][1][1] = 1
    mul[1][0][1] = 1
    mul[1][1] = [1, 1]  # t^2 = t + 1
    f4 = Algebra(2, 2, ["1", "t"], [1, 0], mul)
    assert validate_algebra(f4) == []
    assert find_nontrivial_idempotent(f4) is None
    assert classify_algebra(f4).local


def test_triangular_relations():
    r = truncated_poly(2, 2)
    lam = triangular_extension(r)
    assert lam.dim == 3 * r.dim
    meta = lam.triangular
    e1, e2, alpha = meta["e1"], meta["e2"], meta["alpha"]
    assert np.array_equal(lam.multiply(e1, alpha), alpha)
    assert np.array_equal(lam.multiply(alpha, e2), alpha)
    assert not lam.multiply(e2, alpha).any()
    assert not lam.multiply(alpha, e1).any()
    assert np.array_equal((e1 + e2) % 2, lam.unit)


def test_triangular_base_field():
    lam = triangular_extension(truncated_poly(2, 1))
    assert lam.dim == 3
    assert len(classify_algebra(lam).primitive_idempotents) == 2


def test_triangular_needs_commutative():
    lam = triangular_extension(truncated_poly(2, 2))
    with pytest.raises(PreconditionError):
        triangular_extension(lam)


def test_opposite_commutative_identical():
    r = truncated_poly(3, 2)
    assert opposite_algebra(r) == r


def test_opposite_involution_and_relations():
    lam = triangular_extension(truncated_poly(2, 2))
    op = opposite_algebra(lam)
    meta = op.triangular
    e1, e2, alpha = meta["e1"], meta["e2"], meta["alpha"]
    assert np.array_equal(op.multiply(e2, alpha), alpha)
    assert np.array_equal(op.multiply(alpha, e1), alpha)
    assert opposite_algebra(op) == lam
    assert opposite_algebra(op).triangular["source"] == "e1"


def test_opposite_radical_same_dimension():
    lam = triangular_extension(truncated_poly(2, 2))
    assert radical_basis(opposite_algebra(lam)).cols == radical_basis(lam).cols


def test_primitive_idempotents_orthogonal_sum():
    for alg in (truncated_poly(2, 3), triangular_extension(truncated_poly(2, 2)), matrix_algebra(2, 2)):
        idems = primitive_idempotents(alg)
        total = np.zeros(alg.dim, dtype=np.int64)
        for e in idems:
            assert np.array_equal(alg.multiply(e, e), e)
            total = (total + e) % alg.p
        assert np.array_equal(total, alg.unit)


def test_radical_nilpotency_via_products():
    for alg in (truncated_poly(2, 3), square_zero_plane(2), triangular_extension(truncated_poly(2, 3))):
        rad = radical_basis(alg)
        current = rad
        for _ in range(alg.dim + 1):
            if current.cols == 0:
                break
            cols = []
            for i in range(current.cols):
                cols.append(alg.left_mult_matrix(current.a[:, i]) @ rad)
            from homcat.linalg import span_columns
            current = span_columns(alg.p, cols)
        assert current.cols == 0


def test_preset_dispatch():
    assert preset_algebra("truncated_poly", 2, 3).dim == 3
    assert preset_algebra("square_zero_plane", 2).dim == 3
    assert preset_algebra("exterior_two_vars", 3).dim == 4


def test_socle_of_regular_semisimple():
    m2 = matrix_algebra(2, 2)
    assert socle_basis(m2).cols == m2.dim


def test_generators_closure():
    lam = triangular_extension(truncated_poly(2, 3))
    gens = lam.generators()
    assert 1 <= len(gens) <= lam.dim
    from homcat.algebra import _subalgebra_closure
    from homcat.linalg import Mat as M
    seed = M(lam.p, np.column_stack([lam.unit] + gens))
    assert _subalgebra_closure(lam, seed).cols == lam.dim
