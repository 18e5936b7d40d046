"""Holonomy algebras of left-invariant connections by exact span saturation,
and their classification against block-form descriptions.

The holonomy algebra is computed as the smallest subspace of End(g)
containing all curvature endomorphisms and closed under commutators with
the connection's left-multiplication operators and under the internal
commutator.  Endomorphisms are vectorized row-major for the span
arithmetic; brackets are always recomputed from the matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .catalog import hat_map
from .connections import Connection, curvature_op
from .liealg import (
    LieAlgebra,
    Mat,
    Subspace,
    mat_inverse,
    nullspace,
    span_saturate,
)
from .scalars import GAUSS_I, QQ
from .structures import InducedHypercomplex


class BlockDecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class HolonomyAlgebra:
    algebra: LieAlgebra
    connection: Connection
    space: Subspace  # vectorized endomorphisms, dim^2 ambient
    basis_ops: tuple  # unflattened Mat values, one per reduced row

    @property
    def dim(self) -> int:
        return self.space.dim


def ambrose_singer(L: LieAlgebra, conn: Connection) -> HolonomyAlgebra:
    """Smallest Lie subalgebra of End(g) containing the curvature operators
    and closed under commutators with the left multiplications."""
    d = L.dim
    base = L.basis()
    seeds = []
    for i in range(d):
        for j in range(i + 1, d):
            r = curvature_op(conn, base[i], base[j])
            if not r.is_zero():
                seeds.append(r.flatten())

    def op_for(nab: Mat):
        def op(vec):
            t = Mat.unflatten(vec, d)
            return (nab @ t - t @ nab).flatten()

        return op

    operators = [op_for(nab) for nab in conn.ops]

    def bracket(u, v):
        a = Mat.unflatten(u, d)
        b = Mat.unflatten(v, d)
        return (a @ b - b @ a).flatten()

    space = span_saturate(d * d, L.ring, seeds, operators, bracket)
    ops = tuple(Mat.unflatten(r, d) for r in space.basis_rows)
    return HolonomyAlgebra(L, conn, space, ops)


def commutant_with_image_in(
    L: LieAlgebra, commuting_mats: Sequence[Mat], image_indices: Sequence[int]
) -> Subspace:
    """{T : [T, M] = 0 for the given M, Im T inside the coordinate block}.

    Requires the coordinate block to be invariant under every M (true for
    the eigenspace-compatible blocks used here); then T is supported on
    the block rows and the conditions close up there.
    """
    d = L.dim
    ring = L.ring
    rows = list(image_indices)
    rpos = {r: t for t, r in enumerate(rows)}
    for m in commuting_mats:
        for r in range(d):
            if r in rpos:
                continue
            for c in rows:
                if not ring.is_zero(ring.coerce(m.rows[r][c])):
                    raise BlockDecompositionError(
                        "image block is not invariant under the commutant data"
                    )
    nuns = len(rows) * d
    cond_rows = []
    for m in commuting_mats:
        # (T m - m_bb T)[r][c] = 0 for r in block rows
        for r in rows:
            for c in range(d):
                cond = [ring.zero()] * nuns
                for k in range(d):
                    # T[r][k] * m[k][c]
                    cond[rpos[r] * d + k] = cond[rpos[r] * d + k] + m.rows[k][c]
                for k in rows:
                    # - m[r][k] * T[k][c]
                    cond[rpos[k] * d + c] = cond[rpos[k] * d + c] - m.rows[r][k]
                if any(not ring.is_zero(ring.coerce(x)) for x in cond):
                    cond_rows.append(tuple(cond))
    solutions = nullspace(Mat(cond_rows), ring) if cond_rows else [
        tuple(
            ring.one() if i == j else ring.zero() for j in range(nuns)
        )
        for i in range(nuns)
    ]
    flat = []
    for sol in solutions:
        t = [[ring.zero()] * d for _ in range(d)]
        for pos, val in enumerate(sol):
            t[rows[pos // d]][pos % d] = val
        flat.append(Mat(t).flatten())
    return Subspace.from_vectors(flat, d * d, ring)


def match_block_description(
    hol: HolonomyAlgebra, scp, image_block: str = "b"
) -> bool:
    """Equality of the holonomy span with {T : [T,J]=[T,E]=0, Im T in block}."""
    sl = scp.sl
    idx = {"gl": sl.gl_indices, "a": sl.a_indices, "b": sl.b_indices}[image_block]
    described = commutant_with_image_in(
        sl.algebra, [scp.cp.j, scp.cp.e], list(idx)
    )
    return described == hol.space


def diagonal_pair_blocks(hol: HolonomyAlgebra, scp) -> list[Mat]:
    """The half-size blocks A with T = diag(A, A) in the adapted basis.

    Every holonomy operator of the eigenspace-compatible connection must
    take this form; a violation raises BlockDecompositionError.
    """
    plus = [tuple(r) for r in scp.plus_basis]
    adapted = plus + [scp.cp.j.apply(p) for p in plus]
    p_mat = Mat(zip(*adapted))
    p_inv = mat_inverse(p_mat, QQ)
    half = len(plus)
    blocks = []
    for t in hol.basis_ops:
        ta = p_inv @ t @ p_mat
        a = Mat([row[:half] for row in ta.rows[:half]])
        d = Mat([row[half:] for row in ta.rows[half:]])
        off1 = Mat([row[half:] for row in ta.rows[:half]])
        off2 = Mat([row[:half] for row in ta.rows[half:]])
        if not (a - d).is_zero() or not off1.is_zero() or not off2.is_zero():
            raise BlockDecompositionError("operator is not a doubled block")
        blocks.append(a)
    return blocks


def _m_shape_components(a: Mat, n: int):
    """Split an M-shaped half-block into (A_1..A_n, B_1..B_n, C, D).

    The row space must lie in the mu rows (the last n of 2n(n+1)); the
    column groups follow the alpha, beta, gamma, mu ordering.
    """
    half = 2 * n * n + 2 * n
    mu_rows = range(half - n, half)
    for r in range(half):
        if r not in mu_rows and any(x != 0 for x in a.rows[r]):
            raise BlockDecompositionError("nonzero entries outside the mu rows")
    rows = [a.rows[r] for r in mu_rows]
    comps = []
    for g in range(2 * n):  # A_1..A_n then B_1..B_n
        comps.append(Mat([row[g * n : (g + 1) * n] for row in rows]))
    c = Mat([row[2 * n * n : 2 * n * n + n] for row in rows])
    d = Mat([row[2 * n * n + n : 2 * n * n + 2 * n] for row in rows])
    return comps, c, d


def semidirect_report(hol: HolonomyAlgebra, scp) -> dict:
    """Shape of the holonomy algebra: abelian ideal, quotient, bracket law."""
    n = scp.n
    blocks = diagonal_pair_blocks(hol, scp)
    shape_ok = True
    comps = []
    for a in blocks:
        try:
            ab, c, d = _m_shape_components(a, n)
        except BlockDecompositionError:
            shape_ok = False
            break
        comps.append((ab, c, d))
    # ideal: operators with vanishing D block, inside the holonomy span
    d_rows = [tuple(x for row in d.rows for x in row) for (_, _, d) in comps]
    coeffs = nullspace(Mat(zip(*d_rows)), QQ) if d_rows else []
    ideal_ops = []
    for t in coeffs:
        acc = Mat.zeros(blocks[0].nrows, blocks[0].ncols, QQ)
        for coef, blk in zip(t, blocks):
            acc = acc + blk.scale(coef)
        ideal_ops.append(acc)
    ideal_abelian = all(
        a.commutator(b).is_zero()
        for i, a in enumerate(ideal_ops)
        for b in ideal_ops[i + 1 :]
    )
    half = blocks[0].nrows if blocks else 0
    ideal_span = Subspace.from_vectors(
        [op.flatten() for op in ideal_ops], half * half, QQ
    )
    ideal_closed = all(
        ideal_span.contains(blk.commutator(v).flatten())
        for blk in blocks
        for v in ideal_ops
    )
    # bracket law on basis pairs: components of [M, M'] agree with
    # (D A' - D' A, ..., D C' - D' C, [D, D'])
    law_ok = True
    for i in range(len(blocks)):
        ai, ci, di = comps[i]
        for j in range(i + 1, len(blocks)):
            aj, cj, dj = comps[j]
            comm = blocks[i].commutator(blocks[j])
            exp_parts = [di @ x - dj @ y for x, y in zip(aj, ai)]
            exp_c = di @ cj - dj @ ci
            exp_d = di.commutator(dj)
            rebuilt = _assemble_m_shape(exp_parts, exp_c, exp_d, n)
            if not (comm - rebuilt).is_zero():
                law_ok = False
    return {
        "shape_match": shape_ok,
        "ideal_dim": len(ideal_ops),
        "quotient_dim": hol.dim - len(ideal_ops),
        "ideal_abelian": ideal_abelian,
        "ideal_closed": ideal_closed,
        "bracket_law": law_ok,
    }


def _assemble_m_shape(parts, c: Mat, d: Mat, n: int) -> Mat:
    half = 2 * n * n + 2 * n
    rows = [[Fraction(0)] * half for _ in range(half)]
    for g, blk in enumerate(parts):
        for r in range(n):
            for s in range(n):
                rows[half - n + r][g * n + s] = blk.rows[r][s]
    for r in range(n):
        for s in range(n):
            rows[half - n + r][2 * n * n + s] = c.rows[r][s]
            rows[half - n + r][2 * n * n + n + s] = d.rows[r][s]
    return Mat(rows)


def h_pattern(x: Mat, y: Mat, z: Mat, w: Mat) -> Mat:
    """The 4x4 block matrix realization of a quaternionic endomorphism."""
    nq = x.nrows
    grid = [
        [x, -y, -z, -w],
        [y, x, -w, z],
        [z, w, x, -y],
        [w, -z, y, x],
    ]
    rows = []
    for bi in range(4):
        for r in range(nq):
            row = []
            for bj in range(4):
                row.extend(grid[bi][bj].rows[r])
            rows.append(tuple(row))
    return Mat(rows)


def quaternionic_classify(hol: HolonomyAlgebra, ind: InducedHypercomplex) -> dict:
    """Position of the holonomy relative to the quaternionic linear algebras.

    in_gl_h: every operator commutes with all three complex structures;
    in_v:    the Z and W blocks vanish (the gl(n, C)-like subalgebra);
    in_sl_h: the X block is traceless for every operator; when false a
    witness (operator index, trace) is reported.
    """
    d = hol.algebra.dim
    if d % 4 != 0:
        raise BlockDecompositionError("ambient dimension must be divisible by 4")
    nq = d // 4
    js = (ind.structure.j1, ind.structure.j2, ind.structure.j3)
    in_gl_h = True
    in_v = True
    in_sl_h = True
    witness = None
    for idx, t in enumerate(hol.basis_ops):
        if any(not (t @ j - j @ t).is_zero() for j in js):
            raise BlockDecompositionError(
                f"operator {idx} does not commute with the hypercomplex structure"
            )
        x = Mat([row[:nq] for row in t.rows[:nq]])
        y = Mat([row[:nq] for row in t.rows[nq : 2 * nq]])
        z = Mat([row[:nq] for row in t.rows[2 * nq : 3 * nq]])
        w = Mat([row[:nq] for row in t.rows[3 * nq :]])
        if not (t - h_pattern(x, y, z, w)).is_zero():
            raise BlockDecompositionError(f"operator {idx} is not quaternionic")
        if not z.is_zero() or not w.is_zero():
            in_v = False
        tr = x.trace()
        if tr != 0:
            in_sl_h = False
            if witness is None:
                witness = (idx, tr)
    return {
        "in_gl_h": in_gl_h,
        "in_v": in_v,
        "in_sl_h": in_sl_h,
        "witness": witness,
    }


def multiplication_by_i(ind: InducedHypercomplex) -> Mat:
    """The real matrix of z -> i z on the hat algebra coordinates."""
    d = ind.hat.algebra.dim
    cols = []
    for k in range(d):
        e = [Fraction(0)] * d
        e[k] = Fraction(1)
        z = ind.hat.to_complex(e)
        iz = tuple(c * GAUSS_I for c in z)
        cols.append(ind.hat.to_real(iz))
    return Mat(zip(*cols))


def complexified_holonomy_check(
    hol_cp: HolonomyAlgebra, ind: InducedHypercomplex, hol_ob: HolonomyAlgebra
) -> dict:
    """The hat holonomy is the realified complexification of the base one.

    Embeds every base holonomy operator T as its C-linear extension and as
    i times it, and compares the real span with the hat holonomy.
    """
    d_hat = ind.hat.algebra.dim
    i_mat = multiplication_by_i(ind)
    vectors = []
    for t in hol_cp.basis_ops:
        ext = hat_map(t, ind, ind)
        vectors.append(ext.flatten())
        vectors.append((i_mat @ ext).flatten())
    span = Subspace.from_vectors(vectors, d_hat * d_hat, QQ)
    return {
        "span_equal": span == hol_ob.space,
        "dim_cp": hol_cp.dim,
        "dim_ob": hol_ob.dim,
        "dim_doubled": hol_ob.dim == 2 * hol_cp.dim,
    }
