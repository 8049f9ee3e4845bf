"""Exact dense linear algebra over a prime field F_p.

Matrices are immutable wrappers around int64 numpy arrays with entries
normalized to [0, p).  Pivot selection is deterministic (first nonzero
entry scanning top-to-bottom, left-to-right) so every canonical form
computed downstream is reproducible bit for bit.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

_SMALL_PRIMES = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}


def is_prime(n: int) -> bool:
    if n in _SMALL_PRIMES:
        return True
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("no inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


class Mat:
    """An immutable rows x cols matrix over F_p."""

    __slots__ = ("p", "a", "_solve_data")

    def __init__(self, p: int, a) -> None:
        if not is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        arr = np.asarray(a, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional, got shape %r" % (arr.shape,))
        arr = np.mod(arr, p)
        arr.setflags(write=False)
        self.p = p
        self.a = arr
        self._solve_data = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "Mat":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "Mat":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def column(cls, p: int, entries: Sequence[int]) -> "Mat":
        return cls(p, np.asarray(entries, dtype=np.int64).reshape(-1, 1))

    # -- shape -------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.a.shape

    # -- arithmetic --------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.cols != other.rows:
            raise ValueError("shape mismatch %r @ %r" % (self.shape, other.shape))
        return Mat(self.p, (self.a @ other.a) % self.p)

    def __add__(self, other: "Mat") -> "Mat":
        if self.p != other.p or self.shape != other.shape:
            raise ValueError("shape/modulus mismatch")
        return Mat(self.p, self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.p != other.p or self.shape != other.shape:
            raise ValueError("shape/modulus mismatch")
        return Mat(self.p, self.a - other.a)

    def __neg__(self) -> "Mat":
        return Mat(self.p, -self.a)

    def scale(self, c: int) -> "Mat":
        return Mat(self.p, self.a * (c % self.p))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Mat)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return "Mat(p=%d,\n%r)" % (self.p, self.a)

    def is_zero(self) -> bool:
        return not self.a.any()

    def transpose(self) -> "Mat":
        return Mat(self.p, self.a.T)

    def hstack(self, other: "Mat") -> "Mat":
        return Mat(self.p, np.hstack([self.a, other.a]))

    def vstack(self, other: "Mat") -> "Mat":
        return Mat(self.p, np.vstack([self.a, other.a]))

    def take_columns(self, idx: Sequence[int]) -> "Mat":
        return Mat(self.p, self.a[:, list(idx)].reshape(self.rows, len(idx)))

    def take_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat(self.p, self.a[list(idx), :].reshape(len(idx), self.cols))

    # -- canonical forms ----------------------------------------------

    def rref(self) -> Tuple["Mat", List[int], int]:
        r, pivots = _rref_array(self.a, self.p)
        m = Mat(self.p, r)
        return m, pivots, len(pivots)

    def rank(self) -> int:
        return len(_rref_array(self.a, self.p)[1])

    def kernel(self) -> "Mat":
        """Columns form a basis of the right null space."""
        red, pivots = _rref_array(self.a, self.p)
        n = self.cols
        free = [j for j in range(n) if j not in pivots]
        basis = np.zeros((n, len(free)), dtype=np.int64)
        for k, j in enumerate(free):
            basis[j, k] = 1
            for i, pc in enumerate(pivots):
                basis[pc, k] = (-red[i, j]) % self.p
        return Mat(self.p, basis)

    def _elimination(self):
        """Cached column elimination: row-reduce the transpose with a
        transform, so each later solve is an index-and-multiply.  pivots are
        the first linearly independent ROW indices of self; basis is the
        reduced column basis (n x r) and comb expresses it in the original
        columns (r x cols)."""
        if self._solve_data is None:
            k = self.cols
            aug = np.hstack([self.a.T, np.eye(k, dtype=np.int64)])
            red, pivots = _rref_array(aug, self.p, stop_col=self.rows)
            r = len(pivots)
            basis = red[:r, : self.rows].T
            comb = red[:r, self.rows:]
            self._solve_data = (pivots, basis, comb)
        return self._solve_data

    def solve(self, b: "Mat") -> Optional["Mat"]:
        """One particular solution X of self @ X = b, or None.

        Deterministic: the solution is supported on the first independent
        columns, matching the free-variables-to-zero pivot rule.
        """
        if self.p != b.p or self.rows != b.rows:
            raise ValueError("solve: shape/modulus mismatch")
        row_pivots, basis, comb = self._elimination()
        if not row_pivots:
            return None if b.a.any() else Mat.zeros(self.p, self.cols, b.cols)
        coeff = b.a[row_pivots, :]
        residual = (b.a - basis @ coeff) % self.p
        if residual.any():
            return None
        return Mat(self.p, (comb.T @ coeff) % self.p)

    def inverse(self) -> Optional["Mat"]:
        if self.rows != self.cols:
            return None
        x = self.solve(Mat.identity(self.p, self.rows))
        if x is None or not np.array_equal((self.a @ x.a) % self.p, np.eye(self.rows, dtype=np.int64)):
            return None
        return x

    def column_space(self) -> "Mat":
        """Canonical basis of the column space (columns of the result)."""
        red, pivots = _rref_array(self.a.T, self.p)
        return Mat(self.p, red[: len(pivots), :].T)


def _rref_array(a: np.ndarray, p: int, stop_col: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    m = np.mod(a, p).astype(np.int64)
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols if stop_col is None else min(cols, stop_col)):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * inv_mod(int(m[r, c]), p)) % p
        col = m[:, c].copy()
        col[r] = 0
        if col.any():
            m -= np.outer(col, m[r])
            m %= p
        pivots.append(c)
        r += 1
    return m, pivots


# -- module-level operations matching the public contract -------------


def rref(m: Mat) -> Tuple[Mat, List[int], int]:
    return m.rref()


def kernel_basis(m: Mat) -> Mat:
    return m.kernel()


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    return a.solve(b)


# -- subspace utilities (columns span the subspace) --------------------


def span_columns(p: int, mats: Iterable[Mat]) -> Mat:
    """Canonical column basis for the sum of the column spans."""
    blocks = [m.a for m in mats if m.cols > 0]
    if not blocks:
        return Mat.zeros(p, 0, 0)
    rows = blocks[0].shape[0]
    joined = np.hstack(blocks)
    return Mat(p, joined).column_space() if joined.size else Mat.zeros(p, rows, 0)


def in_span(basis: Mat, v: Mat) -> bool:
    """Is every column of v inside the column span of basis?"""
    if v.cols == 0:
        return True
    if basis.cols == 0:
        return v.is_zero()
    return basis.solve(v) is not None


def intersect_columns(a: Mat, b: Mat) -> Mat:
    """Basis of the intersection of two column spans."""
    if a.cols == 0 or b.cols == 0:
        return Mat.zeros(a.p, a.rows, 0)
    joint = a.hstack(-b)
    ker = joint.kernel()
    coeff = ker.take_rows(range(a.cols))
    return (a @ coeff).column_space()


class VectorSpan:
    """Incrementally row-reduced span of vectors over F_p; cheap membership
    and extension for greedy closure loops."""

    def __init__(self, p: int, length: int):
        self.p = p
        self.length = length
        self.rows = np.zeros((0, length), dtype=np.int64)
        self.pivots: List[int] = []

    def _reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.mod(v, self.p)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = (v - c * row) % self.p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self._reduce(v).any()

    def add(self, v: np.ndarray) -> bool:
        """Extend by one vector; False if it was already in the span."""
        r = self._reduce(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        r = (r * inv_mod(int(r[pc]), self.p)) % self.p
        if len(self.pivots):
            col = self.rows[:, pc].copy()
            if col.any():
                self.rows = (self.rows - np.outer(col, r)) % self.p
        self.rows = np.vstack([self.rows, r.reshape(1, -1)])
        self.pivots.append(pc)
        return True

    def add_columns(self, m: Mat) -> None:
        for j in range(m.cols):
            self.add(m.a[:, j])

    @property
    def dim(self) -> int:
        return len(self.pivots)


def random_invertible(p: int, n: int, rng: np.random.Generator) -> Mat:
    """Seeded random invertible n x n matrix (rejection sampling)."""
    if n == 0:
        return Mat.zeros(p, 0, 0)
    while True:
        m = Mat(p, rng.integers(0, p, size=(n, n)))
        if m.inverse() is not None:
            return m


# -- characteristic polynomial -----------------------------------------


def charpoly(m: Mat) -> np.ndarray:
    """Coefficients [1, c_1, ..., c_n] of det(t*I - m) = t^n + c_1 t^(n-1) + ... + c_n.

    Hessenberg reduction needs only field divisions, so it is exact in
    any characteristic.
    """
    p = m.p
    n = m.rows
    if n != m.cols:
        raise ValueError("charpoly needs a square matrix")
    h = m.a.copy()
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1 :, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[j + 1, i]] = h[[i, j + 1]]
            h[:, [j + 1, i]] = h[:, [i, j + 1]]
        inv = inv_mod(int(h[j + 1, j]), p)
        f = (h[j + 2 :, j] * inv) % p
        if f.any():
            h[j + 2 :] = (h[j + 2 :] - np.outer(f, h[j + 1])) % p
            h[:, j + 1] = (h[:, j + 1] + h[:, j + 2 :] @ f) % p
    # p_k(t) = (t - h[k-1,k-1]) p_{k-1} - sum_m h[m-1,k-1] (prod subdiag) p_{m-1}
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = np.zeros(k + 1, dtype=np.int64)
        pk[:k] += prev  # t * p_{k-1}
        pk[1:] -= (h[k - 1, k - 1] * prev) % p
        prod = 1
        for mm in range(k - 1, 0, -1):
            prod = (prod * h[mm, mm - 1]) % p
            if prod == 0:
                break
            c = (h[mm - 1, k - 1] * prod) % p
            if c:
                pk[k - mm + 1 :] -= c * polys[mm - 1]
        polys.append(np.mod(pk, p))
    return polys[n]
