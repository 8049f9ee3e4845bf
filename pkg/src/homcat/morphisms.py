"""Objects f: A -> B of the morphism category over a commutative local base,
realized as modules over the two-vertex triangular extension.

Every categorical computation (decomposition, covers, syzygies, transpose)
routes through that module bridge; the explicit source/target formulas are
kept as testable normal-form assertions on the results.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import (
    Algebra,
    InputError,
    PreconditionError,
    is_gorenstein_local,
    opposite_algebra,
    triangular_extension,
)
from .linalg import Mat, span_columns
from .modules import (
    Module,
    ModuleMap,
    algebra_dual,
    algebra_dual_map,
    decompose,
    direct_sum,
    ext_dim,
    hom_basis,
    identity_map,
    injective_envelope,
    is_isomorphic,
    is_linked_module,
    is_projective_module,
    kernel_cokernel_image,
    minimal_presentation,
    projective_cover,
    quotient_module,
    regular_module,
    strip_projectives,
    syzygy,
    syzygy_step,
    transpose,
    zero_map,
    zero_module,
    _unit_vec,
)


def triangular_algebra_for(r: Algebra) -> Algebra:
    if "triangular_ext" not in r._cache:
        r._cache["triangular_ext"] = triangular_extension(r)
    return r._cache["triangular_ext"]  # type: ignore[return-value]


class MorphObject:
    """An object (A --f--> B), together with its module over the triangular
    extension (side M) or over the opposite extension (side M_op)."""

    def __init__(self, A: Module, B: Module, f: ModuleMap, lam: Algebra,
                 cached_lambda: Optional[Module] = None) -> None:
        if f.source is not A or f.target is not B:
            f = ModuleMap(A, B, f.matrix, check=False)
        self.A = A
        self.B = B
        self.f = f
        self.lam = lam
        meta = lam.triangular
        if meta is None:
            raise InputError("MorphObject needs a triangular (quiver) algebra")
        self.op_side = "M" if meta["source"] == "e1" else "M_op"
        if cached_lambda is None:
            cached_lambda = _lambda_module_of(A, B, f.matrix, lam)
        self.X = cached_lambda
        self._cache: Dict[str, object] = {}

    @property
    def base(self) -> Algebra:
        return self.lam.triangular["base"]  # type: ignore[index]

    @property
    def dim(self) -> int:
        return self.A.dim + self.B.dim

    def __repr__(self) -> str:
        return "<MorphObject %d->%d (%s)>" % (self.A.dim, self.B.dim, self.op_side)


class MorphMap:
    """A commuting square (phi_A, phi_B) between morphism objects."""

    def __init__(self, source: MorphObject, target: MorphObject,
                 phi_A: ModuleMap, phi_B: ModuleMap, check: bool = True) -> None:
        self.source = source
        self.target = target
        self.phi_A = phi_A
        self.phi_B = phi_B
        if check:
            lhs = target.f.matrix @ phi_A.matrix
            rhs = phi_B.matrix @ source.f.matrix
            if lhs != rhs:
                raise InputError("square does not commute")

    def lambda_matrix(self) -> Mat:
        """Matrix on the bridge modules (block order follows the side)."""
        first_src = self.source.op_side == "M"
        up, lo = (self.phi_A.matrix, self.phi_B.matrix) if first_src \
            else (self.phi_B.matrix, self.phi_A.matrix)
        out = np.zeros((self.target.dim, self.source.dim), dtype=np.int64)
        out[: up.rows, : up.cols] = up.a
        out[up.rows:, up.cols:] = lo.a
        return Mat(up.p, out)

    def __matmul__(self, other: "MorphMap") -> "MorphMap":
        return MorphMap(other.source, self.target, self.phi_A @ other.phi_A,
                        self.phi_B @ other.phi_B, check=False)


def identity_morph_map(obj: MorphObject) -> MorphMap:
    return MorphMap(obj, obj, identity_map(obj.A), identity_map(obj.B), check=False)


def morph_map_from_lambda(src: MorphObject, tgt: MorphObject, matrix: Mat,
                          check: bool = True) -> MorphMap:
    """Split a bridge-module map into its commuting-square components."""
    s1 = src.A.dim if src.op_side == "M" else src.B.dim
    t1 = tgt.A.dim if tgt.op_side == "M" else tgt.B.dim
    up = matrix.a[:t1, :s1]
    lo = matrix.a[t1:, s1:]
    if check:
        assert not matrix.a[:t1, s1:].any() and not matrix.a[t1:, :s1].any(), \
            "bridge map is not block diagonal"
    if src.op_side == "M":
        phi_a = ModuleMap(src.A, tgt.A, Mat(matrix.p, up), check=False)
        phi_b = ModuleMap(src.B, tgt.B, Mat(matrix.p, lo), check=False)
    else:
        phi_b = ModuleMap(src.B, tgt.B, Mat(matrix.p, up), check=False)
        phi_a = ModuleMap(src.A, tgt.A, Mat(matrix.p, lo), check=False)
    return MorphMap(src, tgt, phi_a, phi_b, check=check)


def _lambda_module_of(A: Module, B: Module, F: Mat, lam: Algebra) -> Module:
    meta = lam.triangular
    base: Algebra = meta["base"]
    p = base.p
    src_first = meta["source"] == "e1"
    first, second = (A, B) if src_first else (B, A)
    n1, n2 = first.dim, second.dim
    acts = []
    for j in range(lam.dim):
        blk = np.zeros((n1 + n2, n1 + n2), dtype=np.int64)
        part = j // base.dim   # 0: e1 r, 1: e2 r, 2: alpha r
        rcoeff = _unit_vec(base.dim, j % base.dim)
        if part == 0:
            blk[:n1, :n1] = first.act_element(rcoeff).a
        elif part == 1:
            blk[n1:, n1:] = second.act_element(rcoeff).a
        else:
            fa = (F @ A.act_element(rcoeff)).a if A.dim else np.zeros((B.dim, 0), dtype=np.int64)
            if src_first:
                blk[n1:, :n1] = fa    # source part leads
            else:
                blk[:n1, n1:] = fa    # target part leads
        acts.append(Mat(p, blk))
    return Module(lam, acts, check=True, parts=(n1, n2))


def object_of_lambda_module(x: Module) -> MorphObject:
    """Read a bridge module back as (A -> B); inverse of the embedding."""
    lam = x.algebra
    meta = lam.triangular
    if meta is None:
        raise InputError("module is not over a triangular extension")
    if x.parts is None:
        from .modules import _adapted_copy
        x, _ = _adapted_copy(x)
    base: Algebra = meta["base"]
    n1, n2 = x.parts  # type: ignore[misc]
    src_first = meta["source"] == "e1"
    src_rows = list(range(0, n1)) if src_first else list(range(n1, n1 + n2))
    tgt_rows = list(range(n1, n1 + n2)) if src_first else list(range(0, n1))

    def extract(rows, cols, elem) -> np.ndarray:
        full = x.act_element(elem).a
        return full[np.ix_(rows, cols)].reshape(len(rows), len(cols))

    emb_src = meta["embed"]["e1"] if src_first else meta["embed"]["e2"]
    emb_tgt = meta["embed"]["e2"] if src_first else meta["embed"]["e1"]
    a_acts = [Mat(base.p, extract(src_rows, src_rows, emb_src @ _unit_vec(base.dim, j)))
              for j in range(base.dim)]
    b_acts = [Mat(base.p, extract(tgt_rows, tgt_rows, emb_tgt @ _unit_vec(base.dim, j)))
              for j in range(base.dim)]
    A = Module(base, a_acts, check=False)
    B = Module(base, b_acts, check=False)
    fmat = Mat(base.p, extract(tgt_rows, src_rows, meta["alpha"]))
    f = ModuleMap(A, B, fmat, check=False)
    return MorphObject(A, B, f, lam, cached_lambda=x)


def make_object(A: Module, B: Module, fmatrix: Mat, side: str = "M") -> MorphObject:
    """Object of M (or M_op) from explicit component data over the base ring."""
    base = A.algebra
    lam = triangular_algebra_for(base)
    if side == "M_op":
        lam = opposite_algebra(lam)
    elif side != "M":
        raise InputError("side must be M or M_op")
    f = ModuleMap(A, B, fmatrix, check=True)
    return MorphObject(A, B, f, lam)


def _make_with_lam(A: Module, B: Module, fmatrix: Mat, lam: Algebra) -> MorphObject:
    f = ModuleMap(A, B, fmatrix, check=False)
    return MorphObject(A, B, f, lam)


def lambda_bridge(x, direction: str):
    """Round-trip between objects and bridge modules."""
    if direction == "to_module":
        if not isinstance(x, MorphObject):
            raise InputError("to_module expects a MorphObject")
        return x.X
    if direction == "to_object":
        if not isinstance(x, Module) or x.algebra.triangular is None:
            raise InputError("to_object expects a module over a triangular algebra")
        return object_of_lambda_module(x)
    raise InputError("direction must be to_module or to_object")


def _zero_object(lam: Algebra) -> MorphObject:
    base: Algebra = lam.triangular["base"]
    z = zero_module(base)
    return _make_with_lam(z, z, Mat.zeros(base.p, 0, 0), lam)


def as_m_side(obj: MorphObject) -> MorphObject:
    """Read an object through the canonical identification onto side M (the
    component data A, B, f is unchanged; only the bridge algebra flips)."""
    if obj.op_side == "M":
        return obj
    lam = triangular_algebra_for(obj.base)
    return _make_with_lam(obj.A, obj.B, obj.f.matrix, lam)


# -- templates, sums, decomposition, red -----------------------------------------


def _templates(lam: Algebra) -> Dict[str, MorphObject]:
    if "morph_templates" in lam._cache:
        return lam._cache["morph_templates"]  # type: ignore[return-value]
    base: Algebra = lam.triangular["base"]
    reg = regular_module(base)
    zero = zero_module(base)
    out = {
        "RR": _make_with_lam(reg, reg, Mat.identity(base.p, base.dim), lam),
        "0R": _make_with_lam(zero, reg, Mat.zeros(base.p, base.dim, 0), lam),
        "R0": _make_with_lam(reg, zero, Mat.zeros(base.p, 0, base.dim), lam),
    }
    lam._cache["morph_templates"] = out
    return out


def direct_sum_objects(objs: Sequence[MorphObject]) -> MorphObject:
    if not objs:
        raise InputError("direct_sum_objects needs at least one object")
    lam = objs[0].lam
    a_sum, a_incls, a_projs = direct_sum([o.A for o in objs])
    b_sum, b_incls, _ = direct_sum([o.B for o in objs])
    p = a_sum.p
    total = Mat.zeros(p, b_sum.dim, a_sum.dim)
    for o, ap, bi in zip(objs, a_projs, b_incls):
        total = total + bi.matrix @ o.f.matrix @ ap.matrix
    return _make_with_lam(a_sum, b_sum, total, lam)


def decompose_object(obj: MorphObject) -> List[Tuple[MorphObject, ModuleMap, ModuleMap]]:
    """Indecomposable object summands with bridge-level split witnesses."""
    if "decompose" in obj._cache:
        return obj._cache["decompose"]  # type: ignore[return-value]
    out = [(object_of_lambda_module(x), incl, proj)
           for x, incl, proj in decompose(obj.X).factors]
    obj._cache["decompose"] = out
    return out


def is_isomorphic_objects(f: MorphObject, g: MorphObject) -> bool:
    if f.A.dim != g.A.dim or f.B.dim != g.B.dim:
        return False
    return is_isomorphic(f.X, g.X)


def red(obj: MorphObject, context: str = "M_or_G") -> MorphObject:
    """Delete the trivial projective (context M_or_G) or projective-injective
    (context E) direct summands; idempotent."""
    if context not in ("M_or_G", "E"):
        raise InputError("context must be M_or_G or E")
    templates = _templates(obj.lam)
    drop = ("RR", "0R") if context == "M_or_G" else ("RR", "R0")
    keep = [s for s, _, _ in decompose_object(obj)
            if not any(is_isomorphic(s.X, templates[k].X) for k in drop)]
    if not keep:
        return _zero_object(obj.lam)
    if len(keep) == 1:
        return keep[0]
    return direct_sum_objects(keep)


def object_is_projective(obj: MorphObject) -> bool:
    return is_projective_module(obj.X)


def object_is_stable(obj: MorphObject) -> bool:
    """No projective object direct summand."""
    if obj.dim == 0:
        return True
    return all(not is_projective_module(s.X) for s, _, _ in decompose_object(obj))


# -- classification ----------------------------------------------------------------


def classify_object(obj: MorphObject) -> dict:
    """Membership flags.  At Krull dimension zero every finitely generated
    module is maximal Cohen-Macaulay, so the MCM layer is all of M and the
    locally-projective condition on the punctured spectrum is vacuous."""
    f = obj.f
    in_s = f.is_injective()
    in_e = f.is_surjective()
    gorenstein = is_gorenstein_local(obj.base)
    in_g: Optional[bool] = in_s if gorenstein else None
    templates = _templates(obj.lam)
    injective_in_h = all(
        is_isomorphic(s.X, templates["RR"].X) or is_isomorphic(s.X, templates["R0"].X)
        for s, _, _ in decompose_object(obj)
    )
    return {
        "in_S": in_s,
        "in_E": in_e,
        "in_H": True,
        "in_G": in_g,
        "projective_in_M": object_is_projective(obj),
        "injective_in_H": injective_in_h,
        "locally_projective": True,
    }


def ker_cok_objects(obj: MorphObject) -> dict:
    out = kernel_cokernel_image(obj.f)
    ker_mod, ker_incl = out["kernel"]
    cok_mod, cok_proj = out["cokernel"]
    return {
        "Ker_obj": _make_with_lam(ker_mod, obj.A, ker_incl.matrix, obj.lam),
        "Cok_obj": _make_with_lam(obj.B, cok_mod, cok_proj.matrix, obj.lam),
    }


# -- free modules over the local base (plain block coordinates) ---------------------


def free_module(base: Algebra, rank: int) -> Module:
    if rank == 0:
        return zero_module(base)
    return direct_sum([regular_module(base)] * rank)[0]


def _ring_entries(base: Algebra, matrix: Mat, t: int, s: int) -> List[List[np.ndarray]]:
    """Ring matrix E (t x s) of a map R^s -> R^t given by its F_p matrix."""
    d = base.dim
    out = []
    for i in range(t):
        row = []
        for j in range(s):
            row.append(matrix.a[i * d:(i + 1) * d, j * d].copy())
        out.append(row)
    return out


def _map_from_ring_entries(base: Algebra, entries: List[List[np.ndarray]]) -> Mat:
    t = len(entries)
    s = len(entries[0]) if t else 0
    d = base.dim
    blk = np.zeros((t * d, s * d), dtype=np.int64)
    for i in range(t):
        for j in range(s):
            blk[i * d:(i + 1) * d, j * d:(j + 1) * d] = base.left_mult_matrix(entries[i][j]).a
    return Mat(base.p, blk)


def dual_free_map(base: Algebra, matrix: Mat, t: int, s: int) -> Mat:
    """Dual of a free-module map R^s -> R^t: the transposed ring matrix,
    as a map R^t -> R^s (commutative base)."""
    entries = _ring_entries(base, matrix, t, s)
    dual_entries = [[entries[i][j] for i in range(t)] for j in range(s)]
    if not dual_entries:
        dual_entries = [[]] * 0
        return Mat.zeros(base.p, s * base.dim, t * base.dim)
    return _map_from_ring_entries(base, dual_entries) if s else Mat.zeros(base.p, 0, t * base.dim)


def _free_presentation(m: Module):
    """(rank0, rank1, d: Mat, cover0) with R^rank1 --d--> R^rank0 -> m minimal.

    Over a local base every projective cover is free and the cover machinery
    produces plain block coordinates.
    """
    base = m.algebra
    if m.dim == 0:
        return 0, 0, Mat.zeros(base.p, 0, 0), None
    cover0, incl1, cover1 = minimal_presentation(m)
    r0 = len(cover0.summands)
    r1 = len(cover1.summands)
    d = incl1.matrix @ cover1.map.matrix
    assert cover0.P.dim == r0 * base.dim and cover1.P.dim == r1 * base.dim
    return r0, r1, d, cover0


# -- projective covers and syzygies in M ----------------------------------------------


def _lift_through_epi(epi: ModuleMap, target_map: ModuleMap) -> ModuleMap:
    """A module map w with epi o w = target_map (source of w projective)."""
    src = target_map.source
    basis = hom_basis(src, epi.source)
    p = epi.matrix.p
    if not basis:
        assert target_map.is_zero()
        return zero_map(src, epi.source)
    cols = np.column_stack([(epi.matrix @ h.matrix).a.reshape(-1) for h in basis])
    sol = Mat(p, cols).solve(Mat.column(p, target_map.matrix.a.reshape(-1)))
    assert sol is not None, "no lift through the epimorphism"
    total = Mat.zeros(p, epi.source.dim, src.dim)
    for c, h in zip(sol.a[:, 0], basis):
        if c:
            total = total + h.matrix.scale(int(c))
    return ModuleMap(src, epi.source, total, check=False)


class MorphCover:
    def __init__(self, obj: MorphObject, map_: MorphMap, note: dict):
        self.obj = obj
        self.map = map_
        self.note = note


def projective_cover_object(f: MorphObject) -> MorphCover:
    """Cover of a submodule-category object by (P0 -> P0 + Q0), cross-checked
    against the bridge-module projective cover."""
    if not f.f.is_injective():
        raise PreconditionError("the explicit cover form needs a monomorphism")
    covA = projective_cover(f.A)
    cok = ker_cok_objects(f)["Cok_obj"]
    covC = projective_cover(cok.B)
    w = _lift_through_epi(cok.f, covC.map)
    p0, q0 = covA.P, covC.P
    tgt, incls, projs = direct_sum([p0, q0])
    cover_obj = _make_with_lam(p0, tgt, incls[0].matrix, f.lam)
    phi_b = f.f.matrix @ covA.map.matrix @ projs[0].matrix + w.matrix @ projs[1].matrix
    mmap = MorphMap(cover_obj, f, covA.map, ModuleMap(tgt, f.B, phi_b, check=False))
    lam_cover = projective_cover(f.X)
    agrees = lam_cover.P.dim == cover_obj.X.dim and is_isomorphic(lam_cover.P, cover_obj.X)
    assert agrees, "explicit cover disagrees with the bridge-module cover"
    assert mmap.phi_A.is_surjective() and mmap.phi_B.is_surjective()
    return MorphCover(cover_obj, mmap, {"bridge_cover_agrees": True})


def syzygy_object(f: MorphObject, i: int = 1) -> dict:
    """Omega^i on the bridge module, with the shape assertions
    (source = Omega^i A, target = Omega^i B + projective, result mono)."""
    if not f.f.is_injective():
        raise PreconditionError("syzygies in the submodule category need a monomorphism")
    if i < 0:
        raise InputError("negative syzygy index")
    x = f.X
    for _ in range(i):
        x = syzygy_step(x)[0]
    obj = object_of_lambda_module(x) if x.dim else _zero_object(f.lam)
    om_a = syzygy(f.A, i)
    om_b = syzygy(f.B, i)
    src_ok = is_isomorphic(obj.A, om_a)
    tgt_stable, dropped = strip_projectives(obj.B)
    tgt_ok = is_isomorphic(tgt_stable, om_b)
    return {"obj": obj, "source_matches": src_ok, "target_matches": tgt_ok,
            "projective_excess_dim": sum(d.dim for d in dropped),
            "in_S": obj.f.is_injective() if obj.dim else True}


# -- transpose in M ------------------------------------------------------------------


def transpose_object(f: MorphObject) -> dict:
    """Bridge-module Auslander transpose with normal-form certificates:
    source = Tr(Cok f), target = Tr(B) + projective, and exactness of the
    connecting four-term sequence rebuilt independently over the base ring."""
    if not f.f.is_injective():
        raise PreconditionError("transpose normal form needs a monomorphism")
    if "transpose" in f._cache:
        return f._cache["transpose"]  # type: ignore[return-value]
    op_lam = opposite_algebra(f.lam)
    tr_x = transpose(f.X)
    tr_obj = object_of_lambda_module(tr_x) if tr_x.dim else _zero_object(op_lam)
    cok = ker_cok_objects(f)["Cok_obj"]
    tr_c = transpose(cok.B)
    tr_b = transpose(f.B)
    source_ok = is_isomorphic(tr_obj.A, tr_c)
    tgt_stable, dropped = strip_projectives(tr_obj.B)
    target_ok = is_isomorphic(tgt_stable, tr_b)
    four = _four_term_certificate(f, tr_obj)
    result = {
        "tr": tr_obj,
        "normalized": {"source_is_tr_cok": source_ok,
                       "target_is_tr_b_plus_proj": target_ok,
                       "projective_excess_dim": sum(d.dim for d in dropped)},
        "four_term": four,
    }
    f._cache["transpose"] = result
    return result


def _four_term_certificate(f: MorphObject, tr_obj: MorphObject) -> dict:
    """Rebuild Tr C -> Tr B + Q -> Tr A -> 0 from scratch over the base ring
    by dualizing the presentation of B induced from covers of A and Cok f;
    check exactness and agreement with the bridge transpose."""
    base = f.base
    p = base.p
    d = base.dim
    A, B = f.A, f.B
    cok = ker_cok_objects(f)["Cok_obj"]
    C, g = cok.B, cok.f
    a0, a1, dA, coverA0 = _free_presentation(A)
    c0, c1, dC, coverC0 = _free_presentation(C)
    if a0 + c0 == 0:
        ok = tr_obj.dim == 0
        return {"exact": bool(ok), "middle_matches_bridge": bool(ok)}
    mid0 = free_module(base, a0 + c0)
    mid1 = free_module(base, a1 + c1)
    u = coverA0.map.matrix if coverA0 else Mat.zeros(p, A.dim, 0)
    v_cover = coverC0.map.matrix if coverC0 else Mat.zeros(p, C.dim, 0)
    w = _lift_through_epi(g, ModuleMap(free_module(base, c0), C, v_cover, check=False)) \
        if c0 else zero_map(zero_module(base), B)
    # eps_B = [f o u, w]: R^(a0+c0) -> B
    eps = np.zeros((B.dim, (a0 + c0) * d), dtype=np.int64)
    eps[:, : a0 * d] = (f.f.matrix @ u).a
    eps[:, a0 * d:] = w.matrix.a
    eps_m = Mat(p, eps)
    # s: R^c1 -> R^a0 with (f o u) o s = -(w o dC)
    if c1 and a0:
        fu_map = ModuleMap(free_module(base, a0), B, f.f.matrix @ u, check=False)
        rhs = ModuleMap(free_module(base, c1), B, -(w.matrix @ dC), check=False)
        s = _solve_through(fu_map, rhs).matrix
    else:
        s = Mat.zeros(p, a0 * d, c1 * d)
    delta = np.zeros(((a0 + c0) * d, (a1 + c1) * d), dtype=np.int64)
    delta[: a0 * d, : a1 * d] = dA.a
    delta[: a0 * d, a1 * d:] = s.a
    delta[a0 * d:, a1 * d:] = dC.a
    delta_m = Mat(p, delta)
    assert (eps_m @ delta_m).is_zero(), "presentation square does not commute"
    assert delta_m.rank() == eps_m.kernel().cols, "induced presentation of B is not exact"
    # dualize the three presentations (free duality = ring-matrix transpose)
    tr_a_mod, pi_a = (quotient_module(free_module(base, a1),
                                      dual_free_map(base, dA, a0, a1).column_space())
                      if a1 or a0 else (zero_module(base), None))
    tr_c_mod, pi_c = (quotient_module(free_module(base, c1),
                                      dual_free_map(base, dC, c0, c1).column_space())
                      if c1 or c0 else (zero_module(base), None))
    delta_star = dual_free_map(base, delta_m, a0 + c0, a1 + c1)
    t_mod, pi_t = quotient_module(mid1, delta_star.column_space())
    # mu: Tr C -> T induced by including the dual C-block (last c1 copies)
    incl_q1 = np.zeros(((a1 + c1) * d, c1 * d), dtype=np.int64)
    if c1:
        incl_q1[a1 * d:, :] = np.eye(c1 * d, dtype=np.int64)
    proj_p1 = np.zeros((a1 * d, (a1 + c1) * d), dtype=np.int64)
    if a1:
        proj_p1[:, : a1 * d] = np.eye(a1 * d, dtype=np.int64)
    if tr_c_mod.dim:
        sec_c = pi_c.matrix.solve(Mat.identity(p, tr_c_mod.dim))
        assert sec_c is not None
        mu = pi_t.matrix @ Mat(p, incl_q1) @ sec_c
    else:
        mu = Mat.zeros(p, t_mod.dim, 0)
    if tr_a_mod.dim and t_mod.dim:
        sec_t = pi_t.matrix.solve(Mat.identity(p, t_mod.dim))
        assert sec_t is not None
        nu = pi_a.matrix @ Mat(p, proj_p1) @ sec_t
    else:
        nu = Mat.zeros(p, tr_a_mod.dim, t_mod.dim)
    exact = ((nu @ mu).is_zero()
             and nu.rank() == tr_a_mod.dim
             and mu.rank() == t_mod.dim - nu.rank())
    middle_obj = _make_with_lam(tr_c_mod, t_mod, mu, opposite_algebra(f.lam))
    middle_matches = is_isomorphic(middle_obj.X, tr_obj.X) if (tr_obj.dim or middle_obj.dim) \
        else True
    return {"exact": bool(exact), "middle_matches_bridge": bool(middle_matches)}


def _solve_through(fu: ModuleMap, rhs: ModuleMap) -> ModuleMap:
    """Module map s with fu o s = rhs, solved in hom coordinates."""
    src = rhs.source
    basis = hom_basis(src, fu.source)
    p = fu.matrix.p
    if not basis:
        assert rhs.is_zero()
        return zero_map(src, fu.source)
    cols = np.column_stack([(fu.matrix @ h.matrix).a.reshape(-1) for h in basis])
    sol = Mat(p, cols).solve(Mat.column(p, rhs.matrix.a.reshape(-1)))
    assert sol is not None, "no solution through the composite"
    total = Mat.zeros(p, fu.source.dim, src.dim)
    for c, h in zip(sol.a[:, 0], basis):
        if c:
            total = total + h.matrix.scale(int(c))
    return ModuleMap(src, fu.source, total, check=False)


# -- lambda operator and horizontal linkage -------------------------------------------


def lambda_object(f: MorphObject, power: int = 1) -> MorphObject:
    """Omega^1 Tr on the bridge module; one application swaps the side."""
    if not f.f.is_injective() and f.op_side == "M":
        raise PreconditionError("the linkage operator is defined on monomorphisms")
    cur = f
    for _ in range(power):
        tr_x = transpose(cur.X)
        om = syzygy_step(tr_x)[0] if tr_x.dim else tr_x
        lam_target = opposite_algebra(cur.lam)
        cur = object_of_lambda_module(om) if om.dim else _zero_object(lam_target)
    return cur


def linked_object(f: MorphObject, method: str = "all") -> dict:
    """Horizontal linkage of a submodule-category object, by the direct
    double-operator comparison, the Ext-vanishing criterion, and the
    component criterion (which needs stable components)."""
    if not f.f.is_injective():
        raise PreconditionError("linkage is defined on monomorphisms")
    out: dict = {}
    if method in ("direct", "all"):
        lam2 = lambda_object(f, 2)
        out["direct"] = is_isomorphic_objects(f, lam2)
    if method in ("ext_criterion", "all"):
        stable = object_is_stable(f)
        tr_x = transpose(f.X)
        op_lam = opposite_algebra(f.lam)
        ext1 = ext_dim(tr_x, regular_module(op_lam), 1) if tr_x.dim else 0
        out["ext_criterion"] = bool(stable and ext1 == 0)
        out["stable"] = stable
        out["ext_vanishes"] = ext1 == 0
    if method in ("component", "all"):
        a_stable = strip_projectives(f.A)[1] == []
        b_stable = strip_projectives(f.B)[1] == []
        if not (a_stable and b_stable):
            out["component"] = None
            out["component_note"] = "hypothesis not met: components are not stable"
        else:
            out["component"] = bool(is_linked_module(f.A)["linked"]
                                    and is_linked_module(f.B)["linked"])
    verdicts = [v for k, v in out.items()
                if k in ("direct", "ext_criterion", "component") and v is not None]
    out["linked"] = verdicts[0] if verdicts else None
    return out


# -- envelopes, covers, duality --------------------------------------------------------


def _nil_subspace_check(endos: List[Mat], v0: List[Mat], p: int) -> bool:
    """Is the span of v0 a nil one-sided ideal inside span(endos)?  Nil
    one-sided ideals sit inside the Jacobson radical, which certifies
    minimality without computing the radical."""
    if not v0:
        return True
    n = v0[0].rows
    current = [m.a.reshape(-1) for m in v0]
    seen_dims = -1
    for _ in range(n * n + 1):
        if not current:
            return True
        span = Mat(p, np.column_stack(current)).column_space()
        if span.cols == 0:
            return True
        nxt = []
        for i in range(span.cols):
            mat_i = Mat(p, span.a[:, i].reshape(n, n))
            for w in v0:
                prod = mat_i @ w
                if not prod.is_zero():
                    nxt.append(prod.a.reshape(-1))
        if not nxt:
            return True
        new_span = Mat(p, np.column_stack(nxt)).column_space()
        if new_span.cols >= span.cols and seen_dims == new_span.cols:
            return False
        seen_dims = new_span.cols
        current = [new_span.a[:, i].reshape(-1) for i in range(new_span.cols)]
    return False


def _endo_solutions(obj: MorphObject, rows: List[Tuple[Mat, Mat]]) -> List[Mat]:
    """Bridge endomorphisms h of obj with constraint_left @ h_lambda @ constraint_right
    summed to zero for each row; rows give (L_i, R_i) with condition
    sum_i L_i h R_i = 0 --- here used with single-term rows."""
    endos = hom_basis(obj.X, obj.X)
    p = obj.X.p
    if not endos:
        return []
    conds = []
    for left, right in rows:
        cols = []
        for h in endos:
            val = (left @ h.matrix @ right).a.reshape(-1)
            cols.append(val)
        conds.append(np.column_stack(cols))
    if conds:
        sysm = Mat(p, np.vstack(conds))
        ker = sysm.kernel()
    else:
        ker = Mat.identity(p, len(endos))
    out = []
    for j in range(ker.cols):
        acc = Mat.zeros(p, obj.X.dim, obj.X.dim)
        for c, h in zip(ker.a[:, j], endos):
            if c:
                acc = acc + h.matrix.scale(int(c))
        out.append(acc)
    return out


def e_envelope(f: MorphObject) -> dict:
    """Left-minimal epi approximation [f p]: A + P -> B, with P a projective
    cover of Cok f lifted along B -> Cok f; left minimality is certified by a
    nil-ideal check on the constrained endomorphisms."""
    cok = ker_cok_objects(f)["Cok_obj"]
    C = cok.B
    if C.dim == 0:
        return {"env": f, "map": identity_morph_map(f), "already_epi": True,
                "left_minimal": True}
    covC = projective_cover(C)
    lift = _lift_through_epi(cok.f, covC.map)
    src, incls, projs = direct_sum([f.A, covC.P])
    p = f.A.p
    env_matrix = f.f.matrix @ projs[0].matrix + lift.matrix @ projs[1].matrix
    env = _make_with_lam(src, f.B, env_matrix, f.lam)
    assert env.f.is_surjective()
    mmap = MorphMap(f, env, incls[0], identity_map(f.B))
    # v o mmap = 0: v_src o incl_A = 0 and v_tgt = 0 (a left ideal of End(env))
    n1 = env.A.dim if env.op_side == "M" else env.B.dim
    big = env.X.dim
    incl_block = np.zeros((big, f.A.dim), dtype=np.int64)
    if env.op_side == "M":
        incl_block[:env.A.dim, :] = incls[0].matrix.a
    else:
        incl_block[n1:, :] = incls[0].matrix.a
    tgt_rows = np.zeros((env.B.dim, big), dtype=np.int64)
    if env.op_side == "M":
        tgt_rows[:, env.A.dim:] = np.eye(env.B.dim, dtype=np.int64)
    else:
        tgt_rows[:, :env.B.dim] = np.eye(env.B.dim, dtype=np.int64)
    v0 = _endo_solutions(env, [(Mat.identity(p, big), Mat(p, incl_block)),
                               (Mat(p, tgt_rows), Mat.identity(p, big))])
    endos = [h.matrix for h in hom_basis(env.X, env.X)]
    minimal = _nil_subspace_check(endos, v0, p)
    assert minimal, "envelope failed the left-minimality certificate"
    return {"env": env, "map": mmap, "already_epi": False, "left_minimal": True}


def g_cover(f: MorphObject) -> dict:
    """Right-minimal approximation [f e]: A -> B + P' from the submodule side,
    with Ker f -> P' an injective (= projective) envelope extended over A."""
    if not is_gorenstein_local(f.base):
        raise PreconditionError("the cover construction needs a self-injective base")
    kc = ker_cok_objects(f)
    K_obj = kc["Ker_obj"]
    K = K_obj.A
    if K.dim == 0:
        return {"cov": f, "map": identity_morph_map(f), "already_mono": True,
                "right_minimal": True}
    env = injective_envelope(K)
    # extend env along K -> A using self-injectivity of the target
    ext = _extend_through_mono(K_obj.f, env)
    tgt, incls, projs = direct_sum([f.B, env.target])
    p = f.A.p
    cov_matrix = incls[0].matrix @ f.f.matrix + incls[1].matrix @ ext.matrix
    cov = _make_with_lam(f.A, tgt, cov_matrix, f.lam)
    assert cov.f.is_injective()
    mmap = MorphMap(cov, f, identity_map(f.A), projs[0])
    big = cov.X.dim
    n_src = cov.A.dim
    src_cols = np.zeros((big, n_src), dtype=np.int64)
    if cov.op_side == "M":
        src_cols[:n_src, :] = np.eye(n_src, dtype=np.int64)
    else:
        src_cols[cov.B.dim:, :] = np.eye(n_src, dtype=np.int64)
    projb_rows = np.zeros((f.B.dim, big), dtype=np.int64)
    if cov.op_side == "M":
        projb_rows[:, n_src:] = projs[0].matrix.a
    else:
        projb_rows[:, :cov.B.dim] = projs[0].matrix.a
    v0 = _endo_solutions(cov, [(Mat.identity(p, big), Mat(p, src_cols)),
                               (Mat(p, projb_rows), Mat.identity(p, big))])
    # keep only the "map o v = 0" part: v_src = 0 and proj_B o v_tgt = 0 --- both
    # rows above encode exactly that, so v0 is a right ideal; nil check certifies
    endos = [h.matrix for h in hom_basis(cov.X, cov.X)]
    minimal = _nil_subspace_check(endos, v0, p)
    assert minimal, "cover failed the right-minimality certificate"
    return {"cov": cov, "map": mmap, "already_mono": False, "right_minimal": True}


def _extend_through_mono(mono: ModuleMap, map_from_sub: ModuleMap) -> ModuleMap:
    """e: A -> T with e o mono = map_from_sub (T injective over the base)."""
    A = mono.target
    T = map_from_sub.target
    basis = hom_basis(A, T)
    p = mono.matrix.p
    if not basis:
        assert map_from_sub.is_zero()
        return zero_map(A, T)
    cols = np.column_stack([(h.matrix @ mono.matrix).a.reshape(-1) for h in basis])
    sol = Mat(p, cols).solve(Mat.column(p, map_from_sub.matrix.a.reshape(-1)))
    assert sol is not None, "no extension through the monomorphism"
    total = Mat.zeros(p, T.dim, A.dim)
    for c, h in zip(sol.a[:, 0], basis):
        if c:
            total = total + h.matrix.scale(int(c))
    return ModuleMap(A, T, total, check=False)


def dual_object(f: MorphObject) -> MorphObject:
    """(A -> B)' = (B' -> A'): swaps the mono and epi layers; the result is
    always presented on side M."""
    if not is_gorenstein_local(f.base):
        raise PreconditionError("the component duality needs a self-injective base")
    fd = algebra_dual_map(f.f)  # B' -> A'
    lam = triangular_algebra_for(f.base)
    return _make_with_lam(fd.source, fd.target, fd.matrix, lam)


# -- stable hom dimensions ----------------------------------------------------------


def stable_hom_dim(f: MorphObject, g: MorphObject, variant: str = "proj") -> int:
    """dim Hom(f, g) minus the maps factoring through the trivial test objects:
    projectives {(R->R), (0->R)} or the epi-layer injectives {(R->R), (R->0)}."""
    if variant not in ("proj", "inj"):
        raise InputError("variant must be proj or inj")
    if f.lam != g.lam:
        raise InputError("objects live over different triangular algebras")
    homs = hom_basis(f.X, g.X)
    if not homs:
        return 0
    templates = _templates(f.lam)
    keys = ("RR", "0R") if variant == "proj" else ("RR", "R0")
    p = f.X.p
    factor_cols: List[np.ndarray] = []
    for k in keys:
        t = templates[k]
        alphas = hom_basis(f.X, t.X)
        betas = hom_basis(t.X, g.X)
        for a in alphas:
            for b in betas:
                prod = (b.matrix @ a.matrix).a.reshape(-1)
                if prod.any():
                    factor_cols.append(prod)
    if not factor_cols:
        return len(homs)
    u = Mat(p, np.column_stack(factor_cols))
    return len(homs) - u.rank()
