"""Finite-dimensional associative unital algebras over F_p by structure constants.

An Algebra carries its multiplication table mul[i][j] = coefficient vector of
b_i * b_j, plus derived data (radical, socle, primitive idempotents, flags)
filled in by classify_algebra.  Constructors for the preset families, the
two-vertex triangular extension and the opposite algebra live here as well.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .linalg import Mat, charpoly, in_span, inv_mod, is_prime, span_columns


class InputError(ValueError):
    """Malformed input data (schema/shape level)."""


class PreconditionError(ValueError):
    """An operation was called outside its contract."""


class Algebra:
    """Associative unital F_p-algebra given by structure constants.

    mul[i][j] is the length-dim coefficient vector of b_i * b_j.  Derived
    classification data is attached lazily by classify_algebra.
    """

    def __init__(self, p: int, dim: int, basis_labels: Sequence[str], unit: Sequence[int],
                 mul: Sequence[Sequence[Sequence[int]]], name: str = "") -> None:
        if not is_prime(p):
            raise InputError("p = %r is not prime" % (p,))
        if dim < 1:
            raise InputError("algebra dimension must be >= 1")
        if len(basis_labels) != dim:
            raise InputError("expected %d basis labels, got %d" % (dim, len(basis_labels)))
        table = np.asarray(mul, dtype=np.int64)
        if table.shape != (dim, dim, dim):
            raise InputError("mul table must be dim x dim x dim, got %r" % (table.shape,))
        u = np.asarray(unit, dtype=np.int64)
        if u.shape != (dim,):
            raise InputError("unit vector must have length dim")
        self.p = p
        self.dim = dim
        self.basis_labels = list(basis_labels)
        self.unit = u % p
        self.mul = table % p
        self.name = name or "algebra(p=%d,dim=%d)" % (p, dim)
        # left/right multiplication operator tables: L[i] = matrix of x -> b_i * x
        self._left = np.transpose(self.mul, (0, 2, 1)).copy()   # L[i][:, j] = mul[i][j]
        self._right = np.transpose(self.mul, (1, 2, 0)).copy()  # R[j][:, i] = mul[i][j]
        self._cache: Dict[str, object] = {}
        # optional structural metadata set by constructors
        self.triangular: Optional[dict] = None

    # -- element arithmetic (coefficient vectors) -----------------------

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijl->l", x % self.p, y % self.p, self.mul) % self.p

    def left_mult_matrix(self, x: np.ndarray) -> Mat:
        return Mat(self.p, np.tensordot(x % self.p, self._left, axes=(0, 0)))

    def right_mult_matrix(self, x: np.ndarray) -> Mat:
        return Mat(self.p, np.tensordot(x % self.p, self._right, axes=(0, 0)))

    def power(self, x: np.ndarray, n: int) -> np.ndarray:
        acc = self.unit.copy()
        base = x % self.p
        while n:
            if n & 1:
                acc = self.multiply(acc, base)
            base = self.multiply(base, base)
            n >>= 1
        return acc

    def is_unit_element(self, x: np.ndarray) -> bool:
        return self.left_mult_matrix(x).inverse() is not None

    def element_from_label(self, label: str) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.basis_labels.index(label)] = 1
        return v

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Algebra)
            and self.p == other.p
            and self.dim == other.dim
            and np.array_equal(self.unit, other.unit)
            and np.array_equal(self.mul, other.mul)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.dim, self.mul.tobytes()))

    def __repr__(self) -> str:
        return "<Algebra %s>" % self.name

    # -- generators (greedy): small set whose unital closure is everything

    def generators(self) -> List[np.ndarray]:
        if "generators" in self._cache:
            return self._cache["generators"]  # type: ignore[return-value]
        p = self.p
        span = Mat(p, self.unit.reshape(-1, 1)).column_space()
        gens: List[np.ndarray] = []
        for j in range(self.dim):
            v = np.zeros(self.dim, dtype=np.int64)
            v[j] = 1
            if in_span(span, Mat.column(p, v)):
                continue
            gens.append(v)
            span = _subalgebra_closure(self, span.hstack(Mat.column(p, v)))
            if span.cols == self.dim:
                break
        self._cache["generators"] = gens
        return gens


def _subalgebra_closure(alg: Algebra, seed: Mat) -> Mat:
    span = seed.column_space()
    while True:
        cols = [span]
        for i in range(span.cols):
            x = span.a[:, i]
            cols.append(alg.left_mult_matrix(x) @ span)
        new = span_columns(alg.p, cols)
        if new.cols == span.cols:
            return new
        span = new


# -- validation --------------------------------------------------------


def validate_algebra(a: Algebra) -> List[str]:
    """Axiom report; empty iff the table is a valid unital associative algebra."""
    failures: List[str] = []
    u = a.unit
    for j in range(a.dim):
        ej = np.zeros(a.dim, dtype=np.int64)
        ej[j] = 1
        if not np.array_equal(a.multiply(u, ej), ej):
            failures.append("unit: 1*%s != %s" % (a.basis_labels[j], a.basis_labels[j]))
        if not np.array_equal(a.multiply(ej, u), ej):
            failures.append("unit: %s*1 != %s" % (a.basis_labels[j], a.basis_labels[j]))
    for i in range(a.dim):
        bi = np.zeros(a.dim, dtype=np.int64)
        bi[i] = 1
        for j in range(a.dim):
            prod_ij = a.mul[i][j]
            for l in range(a.dim):
                bl = np.zeros(a.dim, dtype=np.int64)
                bl[l] = 1
                left = a.multiply(prod_ij, bl)
                right = a.multiply(bi, a.mul[j][l])
                if not np.array_equal(left, right):
                    failures.append(
                        "associativity: (%s*%s)*%s != %s*(%s*%s)"
                        % (a.basis_labels[i], a.basis_labels[j], a.basis_labels[l],
                           a.basis_labels[i], a.basis_labels[j], a.basis_labels[l])
                    )
    return failures


def is_commutative(a: Algebra) -> bool:
    return bool(np.array_equal(a.mul, np.transpose(a.mul, (1, 0, 2))))


# -- radical -------------------------------------------------------------


def _radical_commutative(a: Algebra) -> Mat:
    # Nilpotent elements form an ideal; x is nilpotent iff x^(p^T) = 0 with
    # p^T >= dim, and x -> x^(p^T) is additive in characteristic p.
    t = 1
    while t < a.dim:
        t *= a.p
    cols = []
    for j in range(a.dim):
        v = np.zeros(a.dim, dtype=np.int64)
        v[j] = 1
        cols.append(a.power(v, t))
    frob = Mat(a.p, np.array(cols).T)
    return frob.kernel().column_space()


def radical_of_matrix_algebra(p: int, basis_mats: List[np.ndarray]) -> Mat:
    """Jacobson radical of span(basis_mats), a unital subalgebra of M_n(F_p).

    Friedl-Ronyai chain: repeatedly cut by the linear conditions
    c_{p^i}(x*y) = 0 where c_m is the coefficient of t^(n-m) in the
    characteristic polynomial of the n x n matrix x*y.  Over the prime
    field each step is an honest linear system.  Returns coefficient
    vectors (columns) relative to basis_mats.
    """
    k = len(basis_mats)
    if k == 0:
        return Mat.zeros(p, 0, 0)
    n = basis_mats[0].shape[0]
    coeff = Mat.identity(p, k)  # columns: current subspace in basis coordinates
    stack = np.stack(basis_mats)  # k x n x n

    def mats_of(c: Mat) -> List[np.ndarray]:
        return [np.tensordot(c.a[:, j], stack, axes=(0, 0)) % p for j in range(c.cols)]

    i = 0
    while p ** i <= n and coeff.cols > 0:
        mats = mats_of(coeff)
        m = len(mats)
        idx = p ** i
        if i == 0:
            # c_1(xy) = -tr(xy): one trace-form Gram computation
            big = np.stack(mats)
            cond = np.einsum("aij,bji->ba", big, big) % p
        else:
            cond = np.zeros((m, m), dtype=np.int64)
            for r, y in enumerate(mats):
                for j, x in enumerate(mats):
                    prod = (x @ y) % p
                    cond[r, j] = int(charpoly(Mat(p, prod))[idx])
        ker = Mat(p, cond).kernel()
        coeff = (coeff @ ker).column_space()
        i += 1
    return coeff


def _radical_general(a: Algebra) -> Mat:
    mats = [a.left_mult_matrix(_basis_vec(a.dim, j)).a for j in range(a.dim)]
    return radical_of_matrix_algebra(a.p, mats)


def _basis_vec(dim: int, j: int) -> np.ndarray:
    v = np.zeros(dim, dtype=np.int64)
    v[j] = 1
    return v


def radical_basis(a: Algebra) -> Mat:
    """Columns span the Jacobson radical (coefficient vectors)."""
    if "radical" in a._cache:
        return a._cache["radical"]  # type: ignore[return-value]
    if a.triangular is not None:
        rad = _radical_triangular(a)
    elif is_commutative(a):
        rad = _radical_commutative(a)
    else:
        rad = _radical_general(a)
    _assert_nilpotent_ideal(a, rad)
    a._cache["radical"] = rad
    return rad


def _radical_triangular(a: Algebra) -> Mat:
    # rad T2(R) = rad R at both vertices plus the whole arrow component
    meta = a.triangular
    base: Algebra = meta["base"]
    rad_r = radical_basis(base)
    cols = []
    for part in ("e1", "e2"):
        emb = meta["embed"][part]  # dim_R -> dim_Lambda coordinate embedding
        for j in range(rad_r.cols):
            cols.append(emb @ rad_r.a[:, j] % a.p)
    emb = meta["embed"]["alpha"]
    for j in range(base.dim):
        cols.append(emb @ _basis_vec(base.dim, j))
    return Mat(a.p, np.array(cols).T).column_space()


def _assert_nilpotent_ideal(a: Algebra, rad: Mat) -> None:
    if rad.cols == 0:
        return
    # two-sided ideal
    for j in range(a.dim):
        b = _basis_vec(a.dim, j)
        left = a.left_mult_matrix(b) @ rad
        right = a.right_mult_matrix(b) @ rad
        if not (in_span(rad, left) and in_span(rad, right)):
            raise AssertionError("radical candidate is not an ideal")
    # nilpotent: iterated span products reach zero
    current = rad
    for _ in range(a.dim + 1):
        if current.cols == 0:
            return
        cols = []
        for i in range(current.cols):
            cols.append(a.left_mult_matrix(current.a[:, i]) @ rad)
        current = span_columns(a.p, cols)
    raise AssertionError("radical candidate is not nilpotent")


# -- idempotents ---------------------------------------------------------


def _min_poly_in_algebra(a: Algebra, x: np.ndarray) -> List[int]:
    """Monic minimal polynomial coefficients (ascending) of the element x."""
    powers = [a.unit.copy()]
    cur = a.unit.copy()
    span = Mat(a.p, a.unit.reshape(-1, 1)).column_space()
    while True:
        cur = a.multiply(cur, x)
        v = Mat.column(a.p, cur)
        if in_span(span, v):
            basis = Mat(a.p, np.array(powers).T)
            sol = basis.solve(v)
            assert sol is not None
            d = len(powers)
            coeffs = [(-int(sol.a[i, 0])) % a.p for i in range(d)] + [1]
            return coeffs
        powers.append(cur.copy())
        span = span.hstack(v).column_space()


def _factor_mod_p(coeffs: List[int], p: int):
    """Distinct irreducible factors (as ascending coeff lists) with multiplicities."""
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for f, e in factors:
        fc = [int(c) % p for c in reversed(f.all_coeffs())]
        out.append((fc, int(e)))
    return out


def _poly_eval_element(a: Algebra, coeffs: List[int], x: np.ndarray) -> np.ndarray:
    acc = np.zeros(a.dim, dtype=np.int64)
    power = a.unit.copy()
    for c in coeffs:
        if c:
            acc = (acc + c * power) % a.p
        power = a.multiply(power, x)
    return acc


def _crt_idempotent(a: Algebra, x: np.ndarray, minpoly: List[int],
                    factors) -> Optional[np.ndarray]:
    """Exact idempotent from a factorization m = g1*g2 with gcd(g1,g2)=1."""
    if len(factors) < 2:
        return None
    sym = sympy.symbols("x")
    f0, e0 = factors[0]
    g1 = sympy.Poly(list(reversed(f0)), sym, modulus=a.p) ** e0
    g2 = sympy.Poly([1], sym, modulus=a.p)
    for fc, e in factors[1:]:
        g2 *= sympy.Poly(list(reversed(fc)), sym, modulus=a.p) ** e
    u, v, g = sympy.gcdex(g1, g2)
    if not g.is_one:
        return None
    h = (v * g2).rem(g1 * g2)
    hc = [int(c) % a.p for c in reversed(h.all_coeffs())]
    e_elt = _poly_eval_element(a, hc, x)
    if not np.array_equal(a.multiply(e_elt, e_elt), e_elt):
        return None
    if not e_elt.any() or np.array_equal(e_elt, a.unit):
        return None
    return e_elt


def find_nontrivial_idempotent(a: Algebra, seed: int = 0, max_tries: int = 500) -> Optional[np.ndarray]:
    """A nontrivial idempotent, or None with a certificate that a is local.

    Scans deterministically (basis, pairwise sums, then seeded random
    elements).  Certifies locality by exhibiting an element of a/J whose
    minimal polynomial is irreducible of degree dim(a/J), after checking
    a/J commutative.
    """
    rad = radical_basis(a)
    codim = a.dim - rad.cols
    if codim == 1:
        return None
    quotient, proj, lift = _quotient_algebra(a, rad)
    if not is_commutative(quotient):
        # a/J semisimple noncommutative: never a division ring over F_p,
        # so a nontrivial idempotent exists; the scan below finds one.
        pass
    rng = np.random.default_rng(seed)

    def candidates():
        for j in range(quotient.dim):
            yield _basis_vec(quotient.dim, j)
        for i in range(quotient.dim):
            for j in range(i + 1, quotient.dim):
                yield (_basis_vec(quotient.dim, i) + _basis_vec(quotient.dim, j)) % quotient.p
        for _ in range(max_tries):
            yield rng.integers(0, quotient.p, size=quotient.dim).astype(np.int64)

    commutative_quotient = is_commutative(quotient)
    for x in candidates():
        if not x.any():
            continue
        mp = _min_poly_in_algebra(quotient, x)
        factors = _factor_mod_p(mp, quotient.p)
        if len(factors) >= 2:
            e_bar = _crt_idempotent(quotient, x, mp, factors)
            if e_bar is not None:
                e = _lift_idempotent(a, lift @ Mat.column(a.p, e_bar), rad)
                if e is not None:
                    return e
        elif len(factors) == 1 and factors[0][1] == 1 and commutative_quotient:
            if len(mp) - 1 == quotient.dim:
                # quotient = F_p[x] is a field: a is local
                return None
    raise AssertionError("idempotent search did not terminate; raise max_tries")


def _lift_idempotent(a: Algebra, e0: Mat, rad: Mat) -> Optional[np.ndarray]:
    """Newton-lift an idempotent of a/J to an exact idempotent of a."""
    e = e0.a[:, 0].copy()
    for _ in range(a.dim + 2):
        err = (a.multiply(e, e) - e) % a.p
        if not err.any():
            break
        e2 = a.multiply(e, e)
        e3 = a.multiply(e2, e)
        e = (3 * e2 - 2 * e3) % a.p
    if (a.multiply(e, e) != e).any():
        return None
    if not e.any() or np.array_equal(e, a.unit):
        return None
    return e


def _quotient_algebra(a: Algebra, ideal: Mat) -> Tuple[Algebra, Mat, Mat]:
    """(a/ideal, projection, section) with structure constants in quotient coords."""
    p = a.p
    s = ideal.cols
    n = a.dim
    if s == 0:
        ident = Mat.identity(p, n)
        return a, ident, ident
    red, pivots, _ = ideal.transpose().rref()
    free = [j for j in range(n) if j not in pivots]
    t = np.zeros((n, n), dtype=np.int64)
    t[:, :s] = ideal.a
    for k, j in enumerate(free):
        t[j, s + k] = 1
    tm = Mat(p, t)
    tinv = tm.inverse()
    assert tinv is not None
    proj = tinv.take_rows(range(s, n))
    section = tm.take_columns(range(s, n))
    qdim = n - s
    mul = np.zeros((qdim, qdim, qdim), dtype=np.int64)
    for i in range(qdim):
        xi = section.a[:, i]
        for j in range(qdim):
            mul[i][j] = (proj @ Mat.column(p, a.multiply(xi, section.a[:, j]))).a[:, 0]
    unit = (proj @ Mat.column(p, a.unit)).a[:, 0]
    labels = ["q%d" % i for i in range(qdim)]
    q = Algebra(p, qdim, labels, unit, mul, name=a.name + "/J")
    return q, proj, section


def primitive_idempotents(a: Algebra, seed: int = 0) -> List[np.ndarray]:
    """Complete list of orthogonal primitive idempotents summing to 1."""
    if "prim_idems" in a._cache:
        return a._cache["prim_idems"]  # type: ignore[return-value]
    result = _split_unit(a, seed)
    total = np.zeros(a.dim, dtype=np.int64)
    for i, e in enumerate(result):
        total = (total + e) % a.p
        for j, f in enumerate(result):
            prod = a.multiply(e, f)
            expected = e if i == j else np.zeros(a.dim, dtype=np.int64)
            assert np.array_equal(prod, expected), "idempotents not orthogonal"
    assert np.array_equal(total, a.unit), "idempotents do not sum to 1"
    a._cache["prim_idems"] = result
    return result


def _split_unit(a: Algebra, seed: int) -> List[np.ndarray]:
    e = find_nontrivial_idempotent(a, seed=seed)
    if e is None:
        return [a.unit.copy()]
    f = (a.unit - e) % a.p
    out: List[np.ndarray] = []
    for idem in (e, f):
        corner, incl = _corner_algebra(a, idem)
        sub = _split_unit(corner, seed)
        out.extend([(incl @ Mat.column(a.p, x)).a[:, 0] for x in sub])
    return out


def _corner_algebra(a: Algebra, e: np.ndarray) -> Tuple[Algebra, Mat]:
    """(eae with unit e, inclusion of coordinates into a)."""
    p = a.p
    proj_mat = a.left_mult_matrix(e) @ a.right_mult_matrix(e)
    basis = proj_mat.column_space()
    k = basis.cols
    mul = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod = a.multiply(basis.a[:, i], basis.a[:, j])
            sol = basis.solve(Mat.column(p, prod))
            assert sol is not None
            mul[i][j] = sol.a[:, 0]
    unit_sol = basis.solve(Mat.column(p, e))
    assert unit_sol is not None
    labels = ["c%d" % i for i in range(k)]
    return Algebra(p, k, labels, unit_sol.a[:, 0], mul, name=a.name + ".corner"), basis


# -- classification -------------------------------------------------------


class Classification:
    def __init__(self, commutative, local, gorenstein_local, radical, socle, idempotents):
        self.commutative = commutative
        self.local = local
        self.gorenstein_local = gorenstein_local
        self.radical_basis = radical
        self.socle_basis = socle
        self.primitive_idempotents = idempotents

    def as_dict(self):
        return {
            "commutative": self.commutative,
            "local": self.local,
            "gorenstein_local": self.gorenstein_local,
            "radical_dim": self.radical_basis.cols,
            "socle_dim": self.socle_basis.cols,
            "num_primitive_idempotents": len(self.primitive_idempotents),
        }


def socle_basis(a: Algebra) -> Mat:
    """Right annihilator of the radical: {x : x * J = 0} (= socle of a as a
    right module over itself)."""
    rad = radical_basis(a)
    if rad.cols == 0:
        return Mat.identity(a.p, a.dim)
    blocks = [a.right_mult_matrix(rad.a[:, j]).a for j in range(rad.cols)]
    stacked = Mat(a.p, np.vstack(blocks))
    return stacked.kernel().column_space()


def classify_algebra(a: Algebra, seed: int = 0) -> Classification:
    if "classification" in a._cache:
        return a._cache["classification"]  # type: ignore[return-value]
    failures = validate_algebra(a)
    if failures:
        raise PreconditionError("classify_algebra on invalid algebra: %s" % failures[:3])
    rad = radical_basis(a)
    idems = primitive_idempotents(a, seed=seed)
    commutative = is_commutative(a)
    local = len(idems) == 1 and find_nontrivial_idempotent(a, seed=seed) is None
    soc = socle_basis(a)
    gorenstein = bool(commutative and local and soc.cols == 1)
    cls = Classification(commutative, local, gorenstein, rad, soc, idems)
    a._cache["classification"] = cls
    return cls


def is_local(a: Algebra) -> bool:
    return classify_algebra(a).local


def is_gorenstein_local(a: Algebra) -> bool:
    return classify_algebra(a).gorenstein_local


def krull_dimension(a: Algebra) -> int:
    """Finite-dimensional algebras are artinian: dimension zero, always."""
    return 0


# -- presets ---------------------------------------------------------------


def truncated_poly(p: int, n: int) -> Algebra:
    """k[x]/(x^n) over F_p."""
    if n < 1:
        raise InputError("truncated_poly needs n >= 1")
    dim = n
    labels = ["1"] + ["x^%d" % i if i > 1 else "x" for i in range(1, n)]
    mul = np.zeros((dim, dim, dim), dtype=np.int64)
    for i in range(dim):
        for j in range(dim):
            if i + j < dim:
                mul[i][j][i + j] = 1
    unit = np.zeros(dim, dtype=np.int64)
    unit[0] = 1
    return Algebra(p, dim, labels, unit, mul, name="truncated_poly(p=%d,n=%d)" % (p, n))


def square_zero_plane(p: int) -> Algebra:
    """k[x,y]/(x^2, xy, y^2): local but not Gorenstein (socle = <x, y>)."""
    labels = ["1", "x", "y"]
    mul = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        mul[0][j][j] = 1
        mul[j][0][j] = 1
    return Algebra(p, 3, labels, [1, 0, 0], mul, name="square_zero_plane(p=%d)" % p)


def exterior_two_vars(p: int) -> Algebra:
    """k[x,y]/(x^2, y^2) with xy = yx: Gorenstein local, socle = <xy>."""
    labels = ["1", "x", "y", "xy"]
    mul = np.zeros((4, 4, 4), dtype=np.int64)
    for j in range(4):
        mul[0][j][j] = 1
        mul[j][0][j] = 1
    mul[1][2][3] = 1
    mul[2][1][3] = 1
    return Algebra(p, 4, labels, [1, 0, 0, 0], mul, name="exterior_two_vars(p=%d)" % p)


PRESETS = {
    "truncated_poly": truncated_poly,
    "square_zero_plane": square_zero_plane,
    "exterior_two_vars": exterior_two_vars,
}


def preset_algebra(kind: str, p: int, n: Optional[int] = None) -> Algebra:
    if kind not in PRESETS:
        raise InputError("unknown preset %r (have %s)" % (kind, sorted(PRESETS)))
    if kind == "truncated_poly":
        if n is None:
            raise InputError("truncated_poly needs n")
        return truncated_poly(p, n)
    return PRESETS[kind](p)


# -- triangular extension and opposite ---------------------------------------


def triangular_extension(r: Algebra) -> Algebra:
    """The two-vertex one-arrow algebra T2(r) = upper triangular 2x2 matrices
    over r, with basis e1*b, e2*b, alpha*b and relations e1*alpha = alpha = alpha*e2.

    Requires r commutative (the arrow carries an r-r-bimodule structure that
    is only consistent with a central base).
    """
    if not is_commutative(r):
        raise PreconditionError("triangular_extension needs a commutative base")
    p = r.p
    d = r.dim
    dim = 3 * d
    labels = (["e1*%s" % s for s in r.basis_labels]
              + ["e2*%s" % s for s in r.basis_labels]
              + ["a*%s" % s for s in r.basis_labels])

    def block(part: int) -> np.ndarray:
        emb = np.zeros((dim, d), dtype=np.int64)
        emb[part * d:(part + 1) * d, :] = np.eye(d, dtype=np.int64)
        return emb

    emb1, emb2, emba = block(0), block(1), block(2)
    mul = np.zeros((dim, dim, dim), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = r.mul[i][j]
            # e1 r * e1 s = e1 rs ; e2 r * e2 s = e2 rs
            mul[i][j] = emb1 @ prod
            mul[d + i][d + j] = emb2 @ prod
            # e1 r * a s = a rs (e1*alpha = alpha); a r * e2 s = a rs (alpha*e2 = alpha)
            mul[i][2 * d + j] = emba @ prod
            mul[2 * d + i][d + j] = emba @ prod
            # e1 r * e2 s = 0, e2 r * e1 s = 0, e2 r * a s = 0, a r * e1 s = 0, a*a = 0
    unit = np.zeros(dim, dtype=np.int64)
    unit[0] = 1
    unit[d] = 1
    lam = Algebra(p, dim, labels, unit, mul, name="T2(%s)" % r.name)
    e1 = np.zeros(dim, dtype=np.int64)
    e1[0] = 1
    e2 = np.zeros(dim, dtype=np.int64)
    e2[d] = 1
    alpha = np.zeros(dim, dtype=np.int64)
    alpha[2 * d] = 1
    lam.triangular = {
        "base": r,
        "e1": e1,
        "e2": e2,
        "alpha": alpha,
        "embed": {"e1": emb1, "e2": emb2, "alpha": emba},
        # for side M the source vertex of an object is e1; the opposite flips it
        "source": "e1",
    }
    return lam


def opposite_algebra(a: Algebra) -> Algebra:
    if "opposite" in a._cache:
        return a._cache["opposite"]  # type: ignore[return-value]
    op = Algebra(a.p, a.dim, list(a.basis_labels), a.unit.copy(),
                 np.transpose(a.mul, (1, 0, 2)).copy(), name=a.name + "^op")
    if a.triangular is not None:
        meta = dict(a.triangular)
        meta["source"] = "e2" if a.triangular["source"] == "e1" else "e1"
        op.triangular = meta
    a._cache["opposite"] = op
    op._cache["opposite"] = a
    return op
