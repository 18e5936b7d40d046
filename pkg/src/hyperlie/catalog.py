"""Concrete algebras and structures: the special/general linear families,
their complex product structures, the classified invariant subalgebra
bases for sl(3, C), inclusion maps, and the trace form used by the
canonical-bundle computation.

Basis conventions used throughout:

  gl(m):      elementary matrices E_ab in row-major (lexicographic) order.
  sl(m+1):    the traceless embeddings diag(E_ab, -delta_ab) of gl(m),
              then the bottom-row vectors a_i = E_{m+1, i+1}, then the
              right-column vectors b_i = E_{i+1, m+1}.
  sl(3):      the ordered basis {E11-E33, E22-E33, E21, E12, E31, E32,
              E13, E23} for everything tied to the rank-two
              classification data.

Bases of the classified families are stored with the 1/sqrt(2)
normalization cleared (X and Y rescaled by sqrt(2)); the induced change
to the bracket table is the integer factor returned by
bracket_rescale_factor, which is recorded rather than silently applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .liealg import (
    LieAlgebra,
    Mat,
    Subspace,
    Vector,
    complexify,
    from_matrix_basis,
    realify,
)
from .scalars import (
    GAUSS_I,
    GAUSS_ONE,
    QI,
    QPOLY,
    QQ,
    Poly,
    Var,
    as_gauss,
    gauss,
    inverse_unit_var,
)
from .structures import (
    ComplexProduct,
    InducedHypercomplex,
    complex_product,
    hypercomplex,
    induced_hypercomplex,
)


class DenominatorZeroError(ValueError):
    """Requested parameter lies on the excluded unit circle."""


def emat(i: int, j: int, size: int, ring=QQ) -> Mat:
    rows = [[ring.zero()] * size for _ in range(size)]
    rows[i][j] = ring.one()
    return Mat(rows)


# ---------------------------------------------------------------------------
# gl(m) and sl(m+1) with the block decomposition


@dataclass(frozen=True)
class GlAlgebra:
    m: int
    algebra: LieAlgebra
    basis_mats: tuple
    coords: Callable[[Mat], Vector]


@dataclass(frozen=True)
class SlAlgebra:
    m: int  # algebra is sl(m+1)
    algebra: LieAlgebra
    basis_mats: tuple
    coords: Callable[[Mat], Vector]
    gl_indices: range
    a_indices: range
    b_indices: range

    def block_subspace(self, which: str) -> Subspace:
        idx = {"gl": self.gl_indices, "a": self.a_indices, "b": self.b_indices}[which]
        dim = self.algebra.dim
        rows = []
        for i in idx:
            row = [Fraction(0)] * dim
            row[i] = Fraction(1)
            rows.append(row)
        return Subspace.from_vectors(rows, dim, QQ)


@lru_cache(maxsize=None)
def build_gl(m: int) -> GlAlgebra:
    mats = [emat(a, b, m) for a in range(m) for b in range(m)]
    labels = [f"A({a},{b})" for a in range(m) for b in range(m)]
    algebra, coords = from_matrix_basis(mats, QQ, labels=labels)
    return GlAlgebra(m, algebra, tuple(mats), coords)


def embed_gl_matrix(x: Mat) -> Mat:
    """diag(x, -tr x), the traceless inclusion gl(m) -> sl(m+1)."""
    m = x.nrows
    rows = [list(x.rows[i]) + [Fraction(0)] for i in range(m)]
    rows.append([Fraction(0)] * m + [-x.trace()])
    return Mat(rows)


@lru_cache(maxsize=None)
def build_sl(m: int) -> SlAlgebra:
    mats = [embed_gl_matrix(emat(a, b, m)) for a in range(m) for b in range(m)]
    labels = [f"A({a},{b})" for a in range(m) for b in range(m)]
    for i in range(m):
        mats.append(emat(m, i, m + 1))
        labels.append(f"a({i})")
    for i in range(m):
        mats.append(emat(i, m, m + 1))
        labels.append(f"b({i})")
    algebra, coords = from_matrix_basis(mats, QQ, labels=labels)
    return SlAlgebra(
        m,
        algebra,
        tuple(mats),
        coords,
        gl_indices=range(m * m),
        a_indices=range(m * m, m * m + m),
        b_indices=range(m * m + m, m * m + 2 * m),
    )


def j0_matrix(n: int, ring=QQ) -> Mat:
    z = Mat.zeros(n, n, ring)
    i = Mat.identity(n, ring)
    top = [list(z.rows[r]) + list((-i).rows[r]) for r in range(n)]
    bot = [list(i.rows[r]) + list(z.rows[r]) for r in range(n)]
    return Mat(top + bot)


def e0_matrix(n: int, ring=QQ) -> Mat:
    i = Mat.identity(n, ring)
    z = Mat.zeros(n, n, ring)
    top = [list(i.rows[r]) + list(z.rows[r]) for r in range(n)]
    bot = [list(z.rows[r]) + list((-i).rows[r]) for r in range(n)]
    return Mat(top + bot)


@dataclass(frozen=True)
class GlComplexProduct:
    n: int
    gl: GlAlgebra
    cp: ComplexProduct


@lru_cache(maxsize=None)
def cp_structure_gl(n: int) -> GlComplexProduct:
    """Right multiplication by J0 and E0 on gl(2n)."""
    gl = build_gl(2 * n)
    j0, e0 = j0_matrix(n), e0_matrix(n)
    j_cols = [gl.coords(x @ j0) for x in gl.basis_mats]
    e_cols = [gl.coords(x @ e0) for x in gl.basis_mats]
    J = Mat(zip(*j_cols))
    E = Mat(zip(*e_cols))
    return GlComplexProduct(n, gl, complex_product(gl.algebra, J, E))


def _sl_blocks(x: Mat, m: int):
    """(A, v, w) blocks of an (m+1) x (m+1) traceless matrix."""
    a = Mat([row[:m] for row in x.rows[:m]])
    w = tuple(x.rows[i][m] for i in range(m))
    v = tuple(x.rows[m][:m])
    return a, v, w


def _sl_assemble(a: Mat, v: Sequence, w: Sequence) -> Mat:
    m = a.nrows
    rows = [list(a.rows[i]) + [w[i]] for i in range(m)]
    rows.append(list(v) + [-a.trace()])
    return Mat(rows)


@dataclass(frozen=True)
class SlComplexProduct:
    """Complex product structure on sl(2n+1) with the adapted plus basis.

    plus_basis lists coordinate vectors in the order alpha_ij, beta_ij
    (both lexicographic), gamma_i, mu_i; this is also the ordering used by
    the holonomy shape reports.
    """

    n: int
    sl: SlAlgebra
    cp: ComplexProduct
    plus_basis: tuple
    plus_labels: tuple

    def plus_index(self, kind: str, i: int, j: int = 0) -> int:
        n = self.n
        if kind == "alpha":
            return i * n + j
        if kind == "beta":
            return n * n + i * n + j
        if kind == "gamma":
            return 2 * n * n + i
        if kind == "mu":
            return 2 * n * n + n + i
        raise ValueError(kind)


@lru_cache(maxsize=None)
def cp_structure_sl(n: int) -> SlComplexProduct:
    """J(A, v, w) = (A J0, -J0 v, -J0 w), E(A, v, w) = (A E0, E0 v, -E0 w)."""
    m = 2 * n
    sl = build_sl(m)
    j0, e0 = j0_matrix(n), e0_matrix(n)

    def apply_blocks(x: Mat, right: Mat, v_sign_mat: Mat, w_sign_mat: Mat) -> Mat:
        a, v, w = _sl_blocks(x, m)
        return _sl_assemble(a @ right, v_sign_mat.apply(v), w_sign_mat.apply(w))

    neg_j0 = -j0
    j_cols = [sl.coords(apply_blocks(x, j0, neg_j0, neg_j0)) for x in sl.basis_mats]
    e_cols = [sl.coords(apply_blocks(x, e0, e0, -e0)) for x in sl.basis_mats]
    J = Mat(zip(*j_cols))
    E = Mat(zip(*e_cols))
    cp = complex_product(sl.algebra, J, E)

    plus_vecs = []
    plus_labels = []
    for i in range(n):
        for j in range(n):
            plus_vecs.append(sl.coords(embed_gl_matrix(emat(i, j, m))))
            plus_labels.append(f"alpha({i},{j})")
    for i in range(n):
        for j in range(n):
            plus_vecs.append(sl.coords(embed_gl_matrix(emat(n + i, j, m))))
            plus_labels.append(f"beta({i},{j})")
    for i in range(n):
        plus_vecs.append(sl.coords(emat(m, i, m + 1)))
        plus_labels.append(f"gamma({i})")
    for i in range(n):
        plus_vecs.append(sl.coords(emat(n + i, m, m + 1)))
        plus_labels.append(f"mu({i})")
    plus = Subspace.from_vectors(plus_vecs, sl.algebra.dim, QQ)
    if plus != cp.g_plus:
        raise ValueError("adapted plus basis does not span the +1 eigenspace")
    return SlComplexProduct(n, sl, cp, tuple(plus_vecs), tuple(plus_labels))


@lru_cache(maxsize=None)
def hypercomplex_sl_c(n: int) -> InducedHypercomplex:
    """Hypercomplex structure on the realified sl(2n+1, C), adapted ordering."""
    scp = cp_structure_sl(n)
    return induced_hypercomplex(scp.sl.algebra, scp.cp, plus_basis=scp.plus_basis)


@lru_cache(maxsize=None)
def hypercomplex_gl_c(n: int) -> InducedHypercomplex:
    """Hypercomplex structure on the realified gl(2n, C), natural ordering.

    The hat basis is (E_ab ..., i E_ab ...) in the gl(2n) lexicographic
    order; this is the ordering in which the hyper-Hermitian metric shapes
    are stated.
    """
    gcp = cp_structure_gl(n)
    gl = gcp.gl
    d = gl.algebra.dim
    hat = realify(complexify(gl.algebra))
    jp = gcp.cp.j
    ep = gcp.cp.e
    zero = Mat.zeros(d, d, QQ)

    def two_block(tl, tr, bl, br):
        rows = []
        for r in range(d):
            rows.append(tuple(tl.rows[r]) + tuple(tr.rows[r]))
        for r in range(d):
            rows.append(tuple(bl.rows[r]) + tuple(br.rows[r]))
        return Mat(rows)

    j1 = two_block(jp, zero, zero, jp)
    j2 = two_block(zero, -ep, ep, zero)
    structure = hypercomplex(hat.algebra, j1, j2)
    ident = Mat.identity(d, QQ)
    return InducedHypercomplex(
        parent=gl.algebra,
        cp=gcp.cp,
        hat=hat,
        structure=structure,
        adapted_basis=tuple(gl.algebra.basis()),
        adapted_to_original=ident,
        original_to_adapted=ident,
    )


# ---------------------------------------------------------------------------
# sl(3) classification data


SL3_BASIS_LABELS = ("E11-E33", "E22-E33", "E21", "E12", "E31", "E32", "E13", "E23")


def sl3_basis_matrices(ring=QQ) -> list[Mat]:
    e = lambda i, j: emat(i, j, 3, ring)
    return [
        e(0, 0) - e(2, 2),
        e(1, 1) - e(2, 2),
        e(1, 0),
        e(0, 1),
        e(2, 0),
        e(2, 1),
        e(0, 2),
        e(1, 2),
    ]


def sl3c_coords(x: Mat) -> Vector:
    """Coordinates of a traceless 3x3 matrix in the fixed sl(3) basis."""
    from .liealg import entry_is_zero

    r = x.rows
    c1, c2 = r[0][0], r[1][1]
    if not entry_is_zero(r[2][2] + c1 + c2):
        raise ValueError("matrix is not traceless")
    return (c1, c2, r[1][0], r[0][1], r[2][0], r[2][1], r[0][2], r[1][2])


def sl3c_matrix(coords: Sequence) -> Mat:
    mats = sl3_basis_matrices(QI)
    out = Mat.zeros(3, 3, QI)
    for c, m in zip(coords, mats):
        out = out + m.scale(as_gauss(c))
    return out


U, X, Y, Z, US, XS, YS, ZS = range(8)
FAMILY_LABELS = ("U", "X", "Y", "Z", "U^s", "X^s", "Y^s", "Z^s")

# squared rescaling applied to the stored family bases: X and Y carry a
# formal sqrt(2) relative to the classification display
SASAKI_SCALE_SQ = (1, 2, 2, 1)


def bracket_rescale_factor(a: int, b: int, k: int) -> Fraction:
    """Exact factor relating stored-basis brackets to the classification table.

    [a', b'] = factor * (table coefficient) * k' holds entrywise; the value
    sqrt(s2[a] s2[b] / s2[k]) is asserted to be rational.
    """
    from math import isqrt

    s2 = SASAKI_SCALE_SQ
    ratio = Fraction(s2[a % 4] * s2[b % 4], s2[k % 4])
    root = Fraction(isqrt(ratio.numerator), isqrt(ratio.denominator))
    if root * root != ratio:
        raise ValueError(f"non-square rescale ratio for ({a},{b},{k})")
    return root


class _TableScalars:
    """Scalar context: symbolic lambda with a formal inverse of 1-|lambda|^2,
    or a concrete Gaussian rational instance."""

    def __init__(self, lam):
        if lam is None:
            self.ring = QPOLY
            self.lam = Poly.of_var(Var("lam"))
            self.lamc = Poly.of_var(Var("lam", conjugated=True))
            self.delta = Poly.of_var(inverse_unit_var("dlam", of="lam"))
            self.one = Poly.one()
        else:
            g = as_gauss(lam)
            denom = GAUSS_ONE - g * g.conjugate()
            if denom.is_zero():
                raise DenominatorZeroError("|lambda| = 1 is excluded")
            self.ring = QI
            self.lam = g
            self.lamc = g.conjugate()
            self.delta = denom.inverse()
            self.one = GAUSS_ONE


def _table_constants(family: str, s: _TableScalars):
    """Bracket tables of the two surviving families.

    Returns (plain, mixed): plain[(a, b)] for a < b among U, X, Y, Z;
    mixed[(a, b)] is the bracket of a with the conjugate of b, for all
    pairs where the table lists a value (the remaining ones follow from
    antisymmetry and the conjugation automorphism).
    """
    one, lam, lamc, delta = s.one, s.lam, s.lamc, s.delta
    if family == "I":
        plain = {
            (U, X): {X: (2 * one - lam)},
            (U, Y): {Y: (2 * lam - one)},
            (U, Z): {Z: (lam + one)},
            (X, Y): {Z: one},
        }
        mixed = {
            (U, U): {},
            (Y, Y): {},
            (U, X): {XS: one - 2 * lam},
            (U, Y): {YS: lam - 2 * one},
            (U, Z): {ZS: -(lam + one)},
            (X, X): {},
            (X, Y): {U: delta, US: delta * lam},
            (X, Z): {XS: -one},
            (Y, Z): {YS: one},
            (Z, Z): {U: delta * (one - lamc), US: -delta * (one - lam)},
        }
    elif family == "II":
        third = Fraction(1, 3)
        plain = {
            (U, Y): {Y: 3 * one},
            (U, Z): {Z: 3 * one},
            (X, Y): {Z: one},
            (X, Z): {Y: one},
        }
        mixed = {
            (U, U): {},
            (Y, Y): {},
            (U, X): {Y: 6 * one, XS: -3 * one},
            (U, Y): {},
            (U, Z): {ZS: -3 * one},
            (X, X): {Z: one, ZS: -one},
            (X, Y): {U: -third * one, US: -2 * third * one},
            (X, Z): {Y: one, XS: -one},
            (Y, Z): {YS: one},
            (Z, Z): {U: third * one, US: -third * one},
        }
    else:
        raise ValueError(f"unknown family {family!r}")
    return plain, mixed


def _sigma_targets(targets: dict, ring) -> dict:
    return {
        (k + 4) % 8: ring.conjugate(c) for k, c in targets.items()
    }


@lru_cache(maxsize=None)
def table_algebra(family: str, lam=None, labels=FAMILY_LABELS) -> LieAlgebra:
    """The 8-dimensional algebra spanned by a family basis and its conjugates.

    family "I" takes lam=None for the symbolic parameter (with its formal
    conjugate and the formal inverse of 1-|lambda|^2) or a concrete
    Gaussian rational with |lambda| != 1; family "II" has constant
    coefficients.
    """
    s = _TableScalars(lam if family == "I" else gauss(0))
    ring = s.ring
    plain, mixed = _table_constants(family, s)

    # complete the mixed table: bracket(a, conj b) = -sigma(bracket(b, conj a))
    for a in range(4):
        for b in range(4):
            if (a, b) in mixed:
                continue
            if (b, a) not in mixed:
                raise ValueError(f"mixed bracket ({a},{b}) underdetermined")
            mixed[(a, b)] = {
                k: -c for k, c in _sigma_targets(mixed[(b, a)], ring).items()
            }

    brackets = {}
    for (a, b), targets in plain.items():
        brackets[(a, b)] = dict(targets)
        brackets[(a + 4, b + 4)] = _sigma_targets(targets, ring)
    for (a, b), targets in mixed.items():
        if targets:
            brackets[(a, 4 + b)] = dict(targets)
    return LieAlgebra(8, ring, brackets, labels=labels)


def rescaled_table_constants(family: str, lam=None):
    """Structure constants satisfied by the stored (rescaled) matrix bases."""
    algebra = table_algebra(family, lam)
    out = {}
    for (a, b), targets in algebra.brackets.items():
        out[(a, b)] = {
            k: bracket_rescale_factor(a, b, k) * c for k, c in targets.items()
        }
    return out


def sasaki_basis(family: str, lam=None):
    """Matrices U, X, Y, Z of the named invariant subalgebra, rescaled.

    X and Y are stored multiplied by sqrt(2) relative to the
    classification display, so all entries are Gaussian rationals (or
    polynomials over them for the symbolic family I).  Returns the list
    [U, X, Y, Z].
    """
    if family == "I":
        if lam is None:
            lam_v = Poly.of_var(Var("lam"))
            i = Poly.constant(GAUSS_I)
            one = Poly.one()
            half = Poly.constant(Fraction(1, 2))
        else:
            lam_v = as_gauss(lam)
            i = GAUSS_I
            one = GAUSS_ONE
            half = gauss(Fraction(1, 2))
        zero = 0 * one
        u = Mat(
            [
                [half * (one - lam_v), -half * i * (lam_v + one), zero],
                [half * i * (lam_v + one), half * (one - lam_v), zero],
                [zero, zero, -(one - lam_v)],
            ]
        )
        x = Mat([[zero, zero, one], [zero, zero, i], [zero, zero, zero]])
        y = Mat([[zero, zero, zero], [zero, zero, zero], [one, i, zero]])
        z = Mat(
            [
                [half, half * i, zero],
                [half * i, -half, zero],
                [zero, zero, zero],
            ]
        )
        return [u, x, y, z]
    if family == "II":
        i = GAUSS_I
        one = GAUSS_ONE
        half = gauss(Fraction(1, 2))
        zero = as_gauss(0)
        u = Mat(
            [
                [-half, -3 * half * i, zero],
                [3 * half * i, -half, zero],
                [zero, zero, one],
            ]
        )
        x = Mat([[zero, zero, one], [zero, zero, i], [one, -i, zero]])
        y = Mat([[zero, zero, zero], [zero, zero, zero], [one, i, zero]])
        z = Mat(
            [
                [half, half * i, zero],
                [half * i, -half, zero],
                [zero, zero, zero],
            ]
        )
        return [u, x, y, z]
    raise ValueError(f"unknown family {family!r}")


def sasaki_basis_with_conjugates(family: str, lam=None):
    mats = sasaki_basis(family, lam)
    return mats + [m.map_entries(lambda c: c.conjugate()) for m in mats]


def sasaki_j(family: str, lam=None) -> Mat:
    """The classified complex structures as 8x8 rational matrices on sl(3)."""
    if family == "II":
        q = Fraction
        left = [
            [q(0), q(0), q(-1, 3), q(-2, 3)],
            [q(0), q(0), q(2, 3), q(1, 3)],
            [q(-1), q(-2), q(0), q(0)],
            [q(2), q(1), q(0), q(0)],
        ]
        right = [
            [q(0), q(-1), q(0), q(-2)],
            [q(1), q(0), q(-2), q(0)],
            [q(0), q(0), q(0), q(-1)],
            [q(0), q(0), q(1), q(0)],
        ]
    elif family == "I":
        g = as_gauss(lam)
        a, b = g.re, g.im
        n = a * a + b * b
        if n == 1:
            raise DenominatorZeroError("|lambda| = 1 is excluded")
        d = n - 1
        left = [
            [b / d, b / d, (1 - a) / d, (-n + a) / d],
            [b / d, b / d, (n - a) / d, (-1 + a) / d],
            [(-a - 1) / d, (-n - a) / d, -b / d, b / d],
            [(n + a) / d, (a + 1) / d, b / d, -b / d],
        ]
        right = [
            [Fraction(0), Fraction(-1), Fraction(0), Fraction(0)],
            [Fraction(1), Fraction(0), Fraction(0), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(0), Fraction(-1)],
            [Fraction(0), Fraction(0), Fraction(1), Fraction(0)],
        ]
    else:
        raise ValueError(f"unknown family {family!r}")
    zero = [Fraction(0)] * 4
    rows = [list(map(Fraction, r)) + zero for r in left]
    rows += [zero + list(map(Fraction, r)) for r in right]
    return Mat(rows)


# ---------------------------------------------------------------------------
# Root vectors over the maximally compact Cartan, and the corrected bases
#
# The Cartan here is spanned by diag(1,1,-2) and the skew rotation
# [[0,-i,0],[i,0,0],[0,0,0]]; this is the convention the classification
# bases decompose over (the first family reads H_a + lambda*H_b, e_a, e_b,
# e_g on the nose).  The root vectors carry a 1/sqrt(2) normalization that
# makes [e_a, e_-a] = H_a exact, whence the Q(i, sqrt2) scalars.


def chevalley_sl3() -> dict:
    from .scalars import SQRT2, as_sqrt2

    def m(rows):
        return Mat([[as_sqrt2(gauss(*c)) for c in row] for row in rows])

    h = Fraction(1, 2)
    x_hat = m([[(0,), (0,), (1,)], [(0,), (0,), (0, 1)], [(0,), (0,), (0,)]])
    y_hat = m([[(0,)] * 3, [(0,)] * 3, [(1,), (0, 1), (0,)]])
    z_hat = m(
        [[(h,), (0, h), (0,)], [(0, h), (-h,), (0,)], [(0,), (0,), (0,)]]
    )
    h_a = m(
        [[(h,), (0, -h), (0,)], [(0, h), (h,), (0,)], [(0,), (0,), (-1,)]]
    )
    h_b = m(
        [[(-h,), (0, -h), (0,)], [(0, h), (-h,), (0,)], [(0,), (0,), (1,)]]
    )
    conj = lambda mat: mat.map_entries(lambda c: c.conjugate())
    inv_r2 = SQRT2 * Fraction(1, 2)  # 1/sqrt(2)
    return {
        "H_a": h_a,
        "H_b": h_b,
        "e_a": x_hat.scale(inv_r2),
        "e_-a": conj(y_hat).scale(inv_r2),
        "e_b": y_hat.scale(inv_r2),
        "e_-b": conj(x_hat).scale(inv_r2),
        "e_g": z_hat,
    }


def family_iii_basis() -> list[Mat]:
    """Basis exhibiting the equivalence of the second and third families."""
    c = chevalley_sl3()
    half = Fraction(1, 2)
    th = Fraction(3, 2)
    u = (
        c["H_a"].scale(half)
        + c["H_b"]
        - (c["e_a"] + c["e_-a"] - c["e_b"] + c["e_g"]).scale(th)
    )
    x = (
        c["H_a"].scale(half)
        + c["H_b"]
        + (c["e_a"] + c["e_-a"] + c["e_b"] - c["e_g"]).scale(half)
    )
    y = (c["H_a"] + c["e_a"] - c["e_-a"] - c["e_b"] + c["e_g"]).scale(-half)
    z = (c["H_a"] + c["e_a"] - c["e_-a"] + c["e_b"] - c["e_g"]).scale(half)
    return [u, x, y, z]


def family_iv_basis(mu_prime) -> list[Mat]:
    """Corrected basis of the fourth family, for mu with 1 + mu = mu_prime^2.

    Only parameters with rational mu_prime are representable here; the
    branch with mu_prime the positive root is the stored one.
    """
    from .scalars import as_sqrt2

    c = chevalley_sl3()
    mp = as_sqrt2(mu_prime)
    if mp.is_zero():
        raise DenominatorZeroError("mu' = 0 is excluded (mu = -1)")
    mpc = mp.conjugate()
    inv = mp.inverse()
    u = c["H_a"] + c["H_b"].scale(Fraction(2)) + c["e_b"].scale(Fraction(3))
    x = (c["H_a"] + c["e_a"] + c["e_-a"].scale(mp) - c["e_b"] + c["e_g"]).scale(inv)
    y = c["e_b"].scale(mpc)
    z = (-c["e_b"] + c["e_g"]).scale(mpc * inv)
    return [u, x, y, z]


def family_v_basis() -> list[Mat]:
    c = chevalley_sl3()
    half = Fraction(1, 2)
    u = c["H_a"] + c["e_-a"].scale(Fraction(2)) + c["e_b"]
    x = (c["e_a"] - c["e_-a"] - c["H_a"] - c["e_b"] - c["e_g"]).scale(half)
    y = c["e_b"].scale(Fraction(2))
    z = c["e_b"] + c["e_g"]
    return [u, x, y, z]


def family_vii_inf_basis() -> list[Mat]:
    c = chevalley_sl3()
    u = c["H_b"] + c["e_-a"] + c["e_b"].scale(Fraction(2))
    x = c["H_a"] + c["e_a"] - c["e_-a"] - c["e_b"] + c["e_g"]
    y = -c["e_b"]
    z = c["e_b"] - c["e_g"]
    return [u, x, y, z]


def invariant_subalgebra_report(mats: Sequence[Mat], ring=QI) -> dict:
    """Closure and complement checks for a candidate invariant subalgebra.

    The span of mats must be a complex subalgebra m of sl(3, C) with
    m + sigma(m) = sl(3, C) as a direct sum.
    """
    coords = [sl3c_coords(m) for m in mats]
    conj_coords = [tuple(ring.conjugate(c) for c in v) for v in coords]
    span = Subspace.from_vectors(coords, 8, ring)
    total = Subspace.from_vectors(list(coords) + list(conj_coords), 8, ring)
    closed = True
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not span.contains(sl3c_coords(mats[i].commutator(mats[j]))):
                closed = False
    return {
        "dim": span.dim,
        "bracket_closed": closed,
        "direct_sum": span.dim == 4 and total.dim == 8,
    }


# ---------------------------------------------------------------------------
# Inclusions


@dataclass(frozen=True)
class Inclusion:
    matrix: Mat  # codomain-coordinates columns for each domain basis vector
    dim_domain: int
    dim_codomain: int


def gl_to_sl(m: int, gl: GlAlgebra | None = None, sl: SlAlgebra | None = None) -> Inclusion:
    gl = gl or build_gl(m)
    sl = sl or build_sl(m)
    cols = [sl.coords(embed_gl_matrix(x)) for x in gl.basis_mats]
    return Inclusion(Mat(zip(*cols)), gl.algebra.dim, sl.algebra.dim)


def _pad_block(x: Mat, ring=QQ) -> Mat:
    """Append one zero row and one zero column."""
    n = x.nrows
    rows = [list(r) + [ring.zero()] for r in x.rows]
    rows.append([ring.zero()] * (n + 1))
    return Mat(rows)


def dagger_sl_matrix(x: Mat, n: int) -> Mat:
    """Blockwise zero-padding sl(2n+1) -> sl(2n+3)."""
    m = 2 * n
    a, v, w = _sl_blocks(x, m)
    blocks = {
        "A": Mat([r[:n] for r in a.rows[:n]]),
        "C": Mat([r[n:] for r in a.rows[:n]]),
        "B": Mat([r[:n] for r in a.rows[n:]]),
        "D": Mat([r[n:] for r in a.rows[n:]]),
    }
    padded = {k: _pad_block(b) for k, b in blocks.items()}
    v1, v2 = list(v[:n]) + [Fraction(0)], list(v[n:]) + [Fraction(0)]
    w1, w2 = list(w[:n]) + [Fraction(0)], list(w[n:]) + [Fraction(0)]
    top = [
        list(padded["A"].rows[r]) + list(padded["C"].rows[r]) + [w1[r]]
        for r in range(n + 1)
    ]
    mid = [
        list(padded["B"].rows[r]) + list(padded["D"].rows[r]) + [w2[r]]
        for r in range(n + 1)
    ]
    bottom = [v1 + v2 + [x.rows[m][m]]]
    return Mat(top + mid + bottom)


def sl_to_sl_plus2(
    n: int, dom: SlAlgebra | None = None, cod: SlAlgebra | None = None
) -> Inclusion:
    dom = dom or build_sl(2 * n)
    cod = cod or build_sl(2 * n + 2)
    cols = [cod.coords(dagger_sl_matrix(x, n)) for x in dom.basis_mats]
    return Inclusion(Mat(zip(*cols)), dom.algebra.dim, cod.algebra.dim)


def dagger_gl_matrix(x: Mat, n: int) -> Mat:
    """Blockwise zero-padding gl(2n) -> gl(2n+2)."""
    blocks = [
        Mat([r[:n] for r in x.rows[:n]]),
        Mat([r[n:] for r in x.rows[:n]]),
        Mat([r[:n] for r in x.rows[n:]]),
        Mat([r[n:] for r in x.rows[n:]]),
    ]
    a, c, b, d = (_pad_block(m) for m in blocks)
    top = [list(a.rows[r]) + list(c.rows[r]) for r in range(n + 1)]
    bot = [list(b.rows[r]) + list(d.rows[r]) for r in range(n + 1)]
    return Mat(top + bot)


def gl_to_gl_plus2(
    n: int, dom: GlAlgebra | None = None, cod: GlAlgebra | None = None
) -> Inclusion:
    dom = dom or build_gl(2 * n)
    cod = cod or build_gl(2 * n + 2)
    cols = [cod.coords(dagger_gl_matrix(x, n)) for x in dom.basis_mats]
    return Inclusion(Mat(zip(*cols)), dom.algebra.dim, cod.algebra.dim)


def hat_map(real_map: Mat, dom: InducedHypercomplex, cod: InducedHypercomplex) -> Mat:
    """C-linear extension of a real-algebra map between hat algebras."""
    dim_dom = dom.hat.algebra.dim
    cols = []
    for k in range(dim_dom):
        hat_vec = [Fraction(0)] * dim_dom
        hat_vec[k] = Fraction(1)
        z = dom.hat.to_complex(hat_vec)
        w = dom.adapted_to_original.apply(z)
        u = real_map.apply(w)
        zp = cod.original_to_adapted.apply(u)
        cols.append(cod.hat.to_real(zp))
    return Mat(zip(*cols))


# ---------------------------------------------------------------------------
# Koszul-type trace form


def koszul_form(L: LieAlgebra, J: Mat, x: Sequence):
    """tr(J o ad x)."""
    return (J @ L.ad(x)).trace()


def koszul_remark_traces(n: int):
    """The two trace values attached to the canonical-bundle obstruction.

    Returns (tr(J o ad x), hat trace) for x the beta(0,0) basis element;
    the second is computed on the hat algebra with its first complex
    structure and equals twice the first.
    """
    scp = cp_structure_sl(n)
    x = scp.sl.coords(embed_gl_matrix(emat(n, 0, 2 * n)))
    base_trace = koszul_form(scp.sl.algebra, scp.cp.j, x)

    ind = hypercomplex_sl_c(n)
    z = ind.original_to_adapted.apply(x)
    x_hat = ind.hat.to_real(tuple(as_gauss(c) for c in z))
    hat_trace = koszul_form(ind.hat.algebra, ind.structure.j1, x_hat)
    return base_trace, hat_trace
