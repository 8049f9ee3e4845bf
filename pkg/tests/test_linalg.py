import itertools

import numpy as np
import pytest

from homcat.linalg import Mat, charpoly, in_span, intersect_columns, kernel_basis, random_invertible, rref, solve, span_columns


def test_rref_identity_f2():
    m = Mat.identity(2, 2)
    red, pivots, rank = rref(m)
    assert red == m
    assert pivots == [0, 1]
    assert rank == 2


def test_rref_rank_one_f2():
    m = Mat(2, [[1, 1], [1, 1]])
    red, pivots, rank = rref(m)
    assert red == Mat(2, [[1, 1], [0, 0]])
    assert pivots == [0]
    assert rank == 1


def test_rref_zero():
    m = Mat.zeros(3, 3, 3)
    red, pivots, rank = rref(m)
    assert red == m and pivots == [] and rank == 0


def test_kernel_identity_empty():
    assert kernel_basis(Mat.identity(3, 2)).cols == 0


def test_kernel_rank_one_f2():
    k = kernel_basis(Mat(2, [[1, 1], [1, 1]]))
    assert k.cols == 1
    assert k == Mat(2, [[1], [1]])


def test_kernel_zero_full():
    k = kernel_basis(Mat.zeros(2, 2, 2))
    assert k.cols == 2
    assert k.rank() == 2


def test_solve_identity():
    b = Mat(5, [[3], [4]])
    assert solve(Mat.identity(5, 2), b) == b


def test_solve_pivot_rule_choice():
    a = Mat(2, [[1, 1], [1, 1]])
    x = solve(a, Mat(2, [[1], [1]]))
    # deterministic pivot rule puts the free variable to zero
    assert x == Mat(2, [[1], [0]])
    assert (a @ x) == Mat(2, [[1], [1]])


def test_solve_inconsistent():
    a = Mat(2, [[1, 1], [1, 1]])
    assert solve(a, Mat(2, [[1], [0]])) is None


def test_solve_shape_error():
    with pytest.raises(ValueError):
        solve(Mat.identity(2, 2), Mat(2, [[1], [0], [0]]))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rref_idempotent_and_rank_nullity_seeded(p):
    rng = np.random.default_rng(7)
    for _ in range(25):
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(1, 7))
        m = Mat(p, rng.integers(0, p, size=(rows, cols)))
        red, pivots, rank = rref(m)
        again, pivots2, rank2 = rref(red)
        assert again == red and pivots2 == pivots and rank2 == rank
        assert rank + kernel_basis(m).cols == cols
        assert m.rank() <= min(rows, cols)


@pytest.mark.parametrize("p", [2, 3])
def test_solve_exactness_seeded(p):
    rng = np.random.default_rng(11)
    for _ in range(25):
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        a = Mat(p, rng.integers(0, p, size=(rows, cols)))
        x0 = Mat(p, rng.integers(0, p, size=(cols, 2)))
        b = a @ x0
        x = solve(a, b)
        assert x is not None
        assert (a @ x) == b


def test_inverse_roundtrip():
    rng = np.random.default_rng(3)
    for p in (2, 3):
        g = random_invertible(p, 4, rng)
        gi = g.inverse()
        assert gi is not None
        assert g @ gi == Mat.identity(p, 4)


def test_span_membership_and_intersection():
    a = Mat(2, [[1, 0], [0, 1], [0, 0]])
    b = Mat(2, [[1], [1], [0]])
    assert in_span(a, b)
    c = Mat(2, [[0], [0], [1]])
    assert not in_span(a, c)
    inter = intersect_columns(a, b.hstack(c))
    assert inter.cols == 1 and in_span(a, inter)
    s = span_columns(2, [b, c])
    assert s.cols == 2


def _charpoly_bruteforce(m: Mat) -> np.ndarray:
    # det(tI - m) by Leibniz expansion; fine for n <= 4
    n = m.rows
    p = m.p
    coeffs = np.zeros(n + 1, dtype=np.int64)

    def poly_entry(i, j):
        e = np.zeros(2, dtype=np.int64)  # a*t + b as [a, b]
        if i == j:
            e[0] = 1
        e[1] = (-int(m.a[i, j])) % p
        return e

    total = np.zeros(n + 1, dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = np.array([1], dtype=np.int64)
        for i in range(n):
            prod = np.convolve(prod, poly_entry(i, perm[i])) % p
        term = np.zeros(n + 1, dtype=np.int64)
        term[n + 1 - len(prod):] = prod
        total = (total + sign * term) % p
    coeffs = total % p
    return coeffs


@pytest.mark.parametrize("p", [2, 3])
def test_charpoly_matches_bruteforce(p):
    rng = np.random.default_rng(19)
    for n in (1, 2, 3, 4):
        for _ in range(8):
            m = Mat(p, rng.integers(0, p, size=(n, n)))
            assert np.array_equal(charpoly(m), _charpoly_bruteforce(m))


def test_charpoly_cayley_hamilton():
    rng = np.random.default_rng(23)
    for p in (2, 3):
        for n in (2, 3, 5):
            m = Mat(p, rng.integers(0, p, size=(n, n)))
            cp = charpoly(m)
            acc = Mat.zeros(p, n, n)
            power = Mat.identity(p, n)
            for c in cp[::-1]:
                acc = acc + power.scale(int(c))
                power = power @ m
            # evaluate with correct exponent order
            acc = Mat.zeros(p, n, n)
            for k, c in enumerate(cp):
                deg = n - k
                power = Mat.identity(p, n)
                for _ in range(deg):
                    power = power @ m
                acc = acc + power.scale(int(c))
            assert acc.is_zero()
