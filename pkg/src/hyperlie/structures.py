"""Complex, product, complex product and hypercomplex structures on Lie algebras.

All validators work on exact matrices and report a failure reason; nothing
is sampled.  Integrability is checked on basis pairs only, which suffices
by bilinearity of the Nijenhuis tensor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .liealg import (
    LieAlgebra,
    Mat,
    RealifiedAlgebra,
    Subspace,
    Vector,
    complexify,
    nullspace,
    realify,
    sigma,
    solve_in_span,
    vec_add,
    vec_sub,
)
from .scalars import QI, QQ, GAUSS_I, as_gauss


class ValidationError(ValueError):
    """Structure validation failure with a machine-readable reason."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


def nijenhuis(L: LieAlgebra, J: Mat, x, y) -> Vector:
    """N_J(x, y) = [x,y] + J([Jx,y] + [x,Jy]) - [Jx,Jy]."""
    jx, jy = J.apply(x), J.apply(y)
    middle = J.apply(vec_add(L.bracket(jx, y), L.bracket(x, jy)))
    return vec_sub(vec_add(L.bracket(x, y), middle), L.bracket(jx, jy))


def holomorphic_defect(L: LieAlgebra, J: Mat, x, y) -> Vector:
    """J[x,y] - [Jx,y] - [x,Jy] - J[Jx,Jy]; vanishes iff N_J(x, y) does."""
    jx, jy = J.apply(x), J.apply(y)
    lhs = J.apply(L.bracket(x, y))
    rhs = vec_add(
        vec_add(L.bracket(jx, y), L.bracket(x, jy)),
        J.apply(L.bracket(jx, jy)),
    )
    return vec_sub(lhs, rhs)


def is_complex_structure(L: LieAlgebra, J: Mat):
    """(True, None) iff J*J = -Id and N_J vanishes; else (False, witness)."""
    if not (J @ J + Mat.identity(L.dim, L.ring)).is_zero():
        return False, "square"
    base = L.basis()
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            if not all(L.ring.is_zero(c) for c in nijenhuis(L, J, base[i], base[j])):
                return False, f"nijenhuis({i},{j})"
    return True, None


def eigenspace(m: Mat, eigenvalue, ring) -> Subspace:
    shifted = m - Mat.identity(m.nrows, ring).scale(eigenvalue)
    return Subspace.from_vectors(nullspace(shifted, ring), m.nrows, ring)


def is_product_structure(L: LieAlgebra, E: Mat):
    """(True, None) iff E*E = Id and both eigenspaces are bracket-closed."""
    if not (E @ E - Mat.identity(L.dim, L.ring)).is_zero():
        return False, "square"
    for value, name in ((L.ring.one(), "plus"), (-L.ring.one(), "minus")):
        if not _subspace_bracket_closed(L, eigenspace(E, value, L.ring)):
            return False, f"eigenspace_{name}"
    return True, None


def _subspace_bracket_closed(L: LieAlgebra, s: Subspace) -> bool:
    rows = s.basis_rows
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if not s.contains(L.bracket(rows[i], rows[j])):
                return False
    return True


def _image_subspace(m: Mat, s: Subspace) -> Subspace:
    return Subspace.from_vectors(
        [m.apply(r) for r in s.basis_rows], s.ambient_dim, s.ring
    )


@dataclass(frozen=True)
class ComplexProduct:
    """Validated pair {J, E} with the E-eigenspace decomposition."""

    algebra: LieAlgebra
    j: Mat
    e: Mat
    g_plus: Subspace
    g_minus: Subspace


def complex_product(L: LieAlgebra, J: Mat, E: Mat) -> ComplexProduct:
    """Validate a complex product structure; raises ValidationError."""
    ident = Mat.identity(L.dim, L.ring)
    if not (E @ E - ident).is_zero():
        raise ValidationError("product_square", "E*E != Id")
    if not (J @ E + E @ J).is_zero():
        raise ValidationError("anticommute", "JE != -EJ")
    g_plus = eigenspace(E, L.ring.one(), L.ring)
    g_minus = eigenspace(E, -L.ring.one(), L.ring)
    if g_plus.dim + g_minus.dim != L.dim or g_plus.dim != g_minus.dim:
        raise ValidationError(
            "eigenspace_dims", f"dims {g_plus.dim}, {g_minus.dim} of {L.dim}"
        )
    for name, space in (("plus", g_plus), ("minus", g_minus)):
        if not _subspace_bracket_closed(L, space):
            raise ValidationError("eigenspace_not_subalgebra", f"g_{name}")
    if _image_subspace(J, g_plus) != g_minus:
        raise ValidationError("j_swaps_eigenspaces", "J(g+) != g-")
    ok, witness = is_complex_structure(L, J)
    if not ok:
        raise ValidationError("integrability", witness)
    return ComplexProduct(L, J, E, g_plus, g_minus)


@dataclass(frozen=True)
class Hypercomplex:
    """Validated triple of anticommuting integrable complex structures."""

    algebra: LieAlgebra
    j1: Mat
    j2: Mat
    j3: Mat


def hypercomplex(L: LieAlgebra, J1: Mat, J2: Mat) -> Hypercomplex:
    """Validate {J1, J2, J3 = J1 J2}; every Jalpha is checked integrable."""
    J3 = J1 @ J2
    if not (J1 @ J2 + J2 @ J1).is_zero():
        raise ValidationError("anticommute", "J1 J2 != -J2 J1")
    for name, J in (("J1", J1), ("J2", J2), ("J3", J3)):
        ok, witness = is_complex_structure(L, J)
        if not ok:
            raise ValidationError("integrability", f"{name}: {witness}")
    return Hypercomplex(L, J1, J2, J3)


def minus_i_eigenspace(Lc: LieAlgebra, J: Mat) -> Subspace:
    """Span of {x + i*Jx} in the complexified algebra, as a Q(i) subspace.

    J is a complex structure on the real form whose basis is the designated
    basis of Lc.
    """
    if Lc.ring is not QI:
        raise ValidationError("ring", "expected a complexified algebra over Q(i)")
    n = Lc.dim
    rows = []
    for k in range(n):
        col = J.column(k)
        rows.append(
            tuple(
                as_gauss(1 if j == k else 0) + GAUSS_I * as_gauss(col[j])
                for j in range(n)
            )
        )
    return Subspace.from_vectors(rows, n, QI)


def complex_structure_from_subalgebra(Lc: LieAlgebra, m: Subspace) -> Mat:
    """Real-form complex structure with (-i)-eigenspace m.

    Requires m bracket-closed and m + sigma(m) a direct-sum decomposition of
    Lc; returns the rational matrix acting on the real form.
    """
    if not _subspace_bracket_closed(Lc, m):
        raise ValidationError("not_subalgebra", "m is not bracket-closed")
    sigma_rows = [sigma(Lc, r) for r in m.basis_rows]
    total = Subspace.from_vectors(
        list(m.basis_rows) + sigma_rows, Lc.dim, QI
    )
    if 2 * m.dim != Lc.dim or total.dim != Lc.dim:
        raise ValidationError("not_complement", "m + sigma(m) != whole algebra")
    span_vectors = list(m.basis_rows) + sigma_rows
    cols = []
    for k in range(Lc.dim):
        e_k = tuple(as_gauss(1 if j == k else 0) for j in range(Lc.dim))
        coords = solve_in_span(span_vectors, e_k, QI)
        # p = component of e_k in m; J e_k = i e_k - 2 i p is real
        p = [as_gauss(0)] * Lc.dim
        for c, row in zip(coords[: m.dim], m.basis_rows):
            for j in range(Lc.dim):
                p[j] = p[j] + c * row[j]
        img = [GAUSS_I * e_k[j] - 2 * GAUSS_I * p[j] for j in range(Lc.dim)]
        for entry in img:
            if entry.im != 0:
                raise ValidationError("not_complement", "J does not preserve the real form")
        cols.append(tuple(entry.re for entry in img))
    return Mat(zip(*cols))


def adapted_block_j1_j2(m: int, ring):
    """The two hat complex structures in the (p, ip, Jp, iJp) ordering."""
    zero, one = ring.zero(), ring.one()

    def block(spec):
        rows = []
        for bi in range(4):
            for r in range(m):
                row = [zero] * (4 * m)
                for bj in range(4):
                    s = spec[bi][bj]
                    if s:
                        row[bj * m + r] = one if s > 0 else -one
                rows.append(tuple(row))
        return Mat(rows)

    j1 = block([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
    j2 = block([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    return j1, j2


@dataclass(frozen=True)
class InducedHypercomplex:
    """Hypercomplex structure on the realified complexification.

    The hat algebra basis is ordered (p, ip, Jp, iJp) where p runs over the
    chosen basis of g+; adapted_basis holds (p, Jp) as vectors of the
    original algebra, and adapted_to_original converts coordinates.
    """

    parent: LieAlgebra
    cp: ComplexProduct
    hat: RealifiedAlgebra
    structure: Hypercomplex
    adapted_basis: tuple
    adapted_to_original: Mat
    original_to_adapted: Mat


def induced_hypercomplex(
    L: LieAlgebra, cp: ComplexProduct, plus_basis=None
) -> InducedHypercomplex:
    """Build the hat algebra and its hypercomplex structure from {J, E}.

    plus_basis optionally fixes the basis of g+ used for the adapted
    ordering; it must span cp.g_plus.
    """
    if L.ring is not QQ:
        raise ValidationError("ring", "induced structure expects a rational algebra")
    from .liealg import Subspace as _Sub
    from .liealg import mat_inverse

    if plus_basis is None:
        plus = [tuple(r) for r in cp.g_plus.basis_rows]
    else:
        plus = [tuple(r) for r in plus_basis]
        if _Sub.from_vectors(plus, L.dim, L.ring) != cp.g_plus:
            raise ValidationError("plus_basis", "does not span the +1 eigenspace")
    adapted = plus + [cp.j.apply(p) for p in plus]
    m = len(plus)
    adapted_mat = Mat(zip(*adapted))  # columns are the adapted basis
    adapted_inv = mat_inverse(adapted_mat, QQ)
    algebra_adapted = L.subalgebra(adapted)
    lc = complexify(algebra_adapted)
    ordering = (
        list(range(m))
        + list(range(2 * m, 3 * m))
        + list(range(m, 2 * m))
        + list(range(3 * m, 4 * m))
    )
    hat = realify(lc, ordering)
    j1, j2 = adapted_block_j1_j2(m, QQ)
    structure = hypercomplex(hat.algebra, j1, j2)
    return InducedHypercomplex(
        parent=L,
        cp=cp,
        hat=hat,
        structure=structure,
        adapted_basis=tuple(adapted),
        adapted_to_original=adapted_mat,
        original_to_adapted=adapted_inv,
    )
