import random
from fractions import Fraction

import pytest

from hyperlie.catalog import (
    DenominatorZeroError,
    FAMILY_LABELS,
    SASAKI_SCALE_SQ,
    bracket_rescale_factor,
    build_gl,
    build_sl,
    chevalley_sl3,
    cp_structure_gl,
    cp_structure_sl,
    dagger_gl_matrix,
    dagger_sl_matrix,
    emat,
    embed_gl_matrix,
    family_iii_basis,
    family_iv_basis,
    family_v_basis,
    family_vii_inf_basis,
    gl_to_gl_plus2,
    gl_to_sl,
    hat_map,
    hypercomplex_gl_c,
    hypercomplex_sl_c,
    invariant_subalgebra_report,
    koszul_form,
    koszul_remark_traces,
    rescaled_table_constants,
    sasaki_basis,
    sasaki_basis_with_conjugates,
    sasaki_j,
    sl3_basis_matrices,
    sl3c_coords,
    sl_to_sl_plus2,
    table_algebra,
)
from hyperlie.liealg import (
    LieAlgebra,
    Mat,
    Subspace,
    basis_vector,
    complexify,
    from_matrix_basis,
    vec_is_zero,
    vec_sub,
)
from hyperlie.scalars import (
    QI,
    QISQRT2,
    QPOLY,
    QQ,
    Poly,
    Var,
    as_gauss,
    as_sqrt2,
    conj_variable,
    gauss,
    variable,
)
from hyperlie.structures import is_complex_structure, minus_i_eigenspace


U, X, Y, Z, US, XS, YS, ZS = range(8)


def test_build_sl_dimensions():
    assert build_sl(2).algebra.dim == 8
    assert build_sl(4).algebra.dim == 24


def test_build_sl_displayed_bracket_rules():
    sl = build_sl(2)
    L = sl.algebra
    rng = random.Random(1)

    def vec_a(v):
        x = [Fraction(0)] * 8
        x[4], x[5] = v
        return tuple(x)

    def vec_b(w):
        x = [Fraction(0)] * 8
        x[6], x[7] = w
        return tuple(x)

    def vec_gl(a_mat):
        return tuple(
            [a_mat.rows[i][j] for i in range(2) for j in range(2)]
            + [Fraction(0)] * 4
        )

    for _ in range(10):
        amat = Mat([[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)])
        v = [Fraction(rng.randint(-3, 3)) for _ in range(2)]
        w = [Fraction(rng.randint(-3, 3)) for _ in range(2)]
        # [(A,0,0),(0,v,0)] = (0, -A^t v - tr(A) v, 0)
        got = L.bracket(vec_gl(amat), vec_a(v))
        expected = [-(amat.rows[0][0] * v[0] + amat.rows[1][0] * v[1])
                    - amat.trace() * v[0],
                    -(amat.rows[0][1] * v[0] + amat.rows[1][1] * v[1])
                    - amat.trace() * v[1]]
        assert got[4:6] == tuple(expected) and vec_is_zero(got[:4] + got[6:])
        # [(A,0,0),(0,0,w)] = (0, 0, A w + tr(A) w)
        got = L.bracket(vec_gl(amat), vec_b(w))
        aw = amat.apply(w)
        expected = [aw[0] + amat.trace() * w[0], aw[1] + amat.trace() * w[1]]
        assert got[6:8] == tuple(expected) and vec_is_zero(got[:6])
        # [(0,v,0),(0,0,w)] = (-w v^t, 0, 0)
        got = L.bracket(vec_a(v), vec_b(w))
        outer = [-w[i] * v[j] for i in range(2) for j in range(2)]
        assert got[:4] == tuple(outer) and vec_is_zero(got[4:])


def test_a_and_b_blocks_abelian():
    sl = build_sl(4)
    L = sl.algebra
    for idx in ("a", "b"):
        rows = sl.block_subspace(idx).basis_rows
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                assert vec_is_zero(L.bracket(rows[i], rows[j]))


def test_build_gl_dim_and_jacobi():
    for m in (2, 4):
        gl = build_gl(m)
        assert gl.algebra.dim == m * m
        assert gl.algebra.check_jacobi() == []


def test_cp_structure_gl_right_multiplication():
    gcp = cp_structure_gl(1)
    # J'(E11) = E11 J0 = -E12
    e11 = gcp.gl.coords(emat(0, 0, 2))
    e12 = gcp.gl.coords(emat(0, 1, 2))
    assert gcp.cp.j.apply(e11) == tuple(-c for c in e12)
    ident = Mat.identity(4, QQ)
    assert (gcp.cp.j @ gcp.cp.j + ident).is_zero()
    assert (gcp.cp.e @ gcp.cp.e - ident).is_zero()


def test_cp_structure_sl_eigenspaces_and_swap():
    for n in (1, 2):
        scp = cp_structure_sl(n)
        plus = Subspace.from_vectors(scp.plus_basis, scp.sl.algebra.dim, QQ)
        assert plus == scp.cp.g_plus
        for i in range(n):
            gam = scp.plus_basis[scp.plus_index("gamma", i)]
            assert scp.cp.g_minus.contains(scp.cp.j.apply(gam))
        for v in scp.plus_basis:
            assert scp.cp.g_minus.contains(scp.cp.j.apply(v))


def test_cp_structure_sl_restricts_to_gl():
    # the traceless embedding intertwines both structures
    for n in (1, 2):
        scp = cp_structure_sl(n)
        gcp = cp_structure_gl(n)
        inc = gl_to_sl(2 * n, gcp.gl, scp.sl)
        for k in range(gcp.gl.algebra.dim):
            e = basis_vector(gcp.gl.algebra.dim, k, QQ)
            assert inc.matrix.apply(gcp.cp.j.apply(e)) == scp.cp.j.apply(
                inc.matrix.apply(e)
            )
            assert inc.matrix.apply(gcp.cp.e.apply(e)) == scp.cp.e.apply(
                inc.matrix.apply(e)
            )


def test_hypercomplex_sl_c_dimensions_and_relations():
    ind = hypercomplex_sl_c(1)
    assert ind.hat.algebra.dim == 16
    h = ind.structure
    assert (h.j1 @ h.j2 - h.j3).is_zero()
    assert (h.j2 @ h.j3 - h.j1).is_zero()
    assert (h.j3 @ h.j1 - h.j2).is_zero()


def test_sasaki_basis_brackets_match_rescaled_tables():
    # the stored matrices satisfy the classification tables up to the
    # recorded integer rescaling factors
    for fam, lam in (("I", gauss(Fraction(1, 2))), ("I", gauss(0)),
                     ("I", gauss(Fraction(1, 3), Fraction(1, 3))), ("II", None)):
        mats = sasaki_basis_with_conjugates(fam, lam)
        alg, _ = from_matrix_basis(mats, QI)
        expected = rescaled_table_constants(fam, lam)
        for key, targets in expected.items():
            want = {k: as_gauss(c) for k, c in targets.items()}
            assert alg.basis_bracket(*key) == want, (fam, key)
        for key in alg.brackets:
            assert key in expected, (fam, key)


def test_sasaki_basis_symbolic_bracket_identities():
    # symbolic checks straight on the matrices: [U, X'] = (2-lam) X',
    # [X', Y'] = 2 Z (rescaling factor 2), [X', Z] = 0
    u, x, y, z = sasaki_basis("I")
    lam = Poly.of_var(Var("lam"))
    two = Poly.constant(2)
    assert (u.commutator(x) - x.scale(two - lam)).is_zero()
    assert (x.commutator(y) - z.scale(two)).is_zero()
    assert x.commutator(z).is_zero()
    assert bracket_rescale_factor(X, Y, Z) == 2
    assert bracket_rescale_factor(U, X, X) == 1


def test_table_algebra_spec_entries():
    t = table_algebra("I")
    lam = Poly.of_var(Var("lam"))
    one = Poly.one()
    assert t.basis_bracket(U, Y) == {Y: 2 * lam - one}
    # [X, Y^s] = (U + lam U^s)/(1 - |lam|^2), with the inverse kept formal
    targets = t.basis_bracket(X, YS)
    dvar = next(iter(targets[U].variables()))
    assert dvar.inverse_of == "lam"
    assert targets[US] == targets[U] * lam
    assert t.basis_bracket(U, US) == {}
    assert t.basis_bracket(Y, YS) == {}
    t2 = table_algebra("II")
    assert t2.basis_bracket(U, US) == {}


def test_table_algebra_ii_golden_entries():
    # independent transcription of the second family's tables
    t = table_algebra("II")
    one = as_gauss(1)
    third = as_gauss(Fraction(1, 3))
    assert t.basis_bracket(U, X) == {}
    assert t.basis_bracket(U, Y) == {Y: 3 * one}
    assert t.basis_bracket(U, Z) == {Z: 3 * one}
    assert t.basis_bracket(X, Y) == {Z: one}
    assert t.basis_bracket(X, Z) == {Y: one}
    assert t.basis_bracket(Y, Z) == {}
    assert t.basis_bracket(U, XS) == {Y: 6 * one, XS: -3 * one}
    assert t.basis_bracket(U, YS) == {}
    assert t.basis_bracket(U, ZS) == {ZS: -3 * one}
    assert t.basis_bracket(X, XS) == {Z: one, ZS: -one}
    assert t.basis_bracket(X, YS) == {U: -third, US: -2 * third}
    assert t.basis_bracket(X, ZS) == {Y: one, XS: -one}
    assert t.basis_bracket(Y, ZS) == {YS: one}
    assert t.basis_bracket(Z, ZS) == {U: third, US: -third}
    assert t.basis_bracket(U, US) == {}
    assert t.basis_bracket(Y, YS) == {}


def test_table_algebra_jacobi():
    assert table_algebra("I").check_jacobi() == []
    assert table_algebra("II").check_jacobi() == []
    assert table_algebra("I", gauss(Fraction(1, 2))).check_jacobi() == []


def test_table_algebra_unit_circle_rejected():
    with pytest.raises(DenominatorZeroError):
        table_algebra("I", gauss(Fraction(3, 5), Fraction(4, 5)))


def test_sasaki_j_complex_structures():
    sl3 = from_matrix_basis(sl3_basis_matrices(), QQ)[0]
    for fam, lam in (("I", gauss(0)), ("I", gauss(Fraction(1, 2))),
                     ("I", gauss(Fraction(1, 3), Fraction(1, 3))), ("II", None)):
        ok, witness = is_complex_structure(sl3, sasaki_j(fam, lam))
        assert ok, (fam, witness)


def test_sasaki_j_column_and_square():
    j0 = sasaki_j("I", gauss(0))
    e21 = basis_vector(8, 2, QQ)
    assert j0.column(0) == e21
    jii = sasaki_j("II")
    assert (jii @ jii + Mat.identity(8, QQ)).is_zero()
    with pytest.raises(DenominatorZeroError):
        sasaki_j("I", gauss(Fraction(3, 5), Fraction(4, 5)))


def test_sasaki_j_eigenspace_equals_basis_span():
    sl3 = from_matrix_basis(sl3_basis_matrices(), QQ)[0]
    lc = complexify(sl3)
    for fam, lam in (("I", gauss(0)), ("I", gauss(Fraction(1, 2))),
                     ("I", gauss(Fraction(1, 3), Fraction(1, 3))), ("II", None)):
        m = minus_i_eigenspace(lc, sasaki_j(fam, lam))
        rows = [sl3c_coords(x) for x in sasaki_basis(fam, lam)]
        assert m == Subspace.from_vectors(rows, 8, QI), fam


def test_chevalley_relations():
    c = chevalley_sl3()
    two = Fraction(2)
    assert (c["e_a"].commutator(c["e_-a"]) - c["H_a"]).is_zero()
    assert (c["e_b"].commutator(c["e_-b"]) - c["H_b"]).is_zero()
    assert (c["H_a"].commutator(c["e_a"]) - c["e_a"].scale(two)).is_zero()
    assert (c["H_b"].commutator(c["e_b"]) - c["e_b"].scale(two)).is_zero()
    assert (c["H_a"].commutator(c["e_b"]) + c["e_b"]).is_zero()
    assert (c["e_a"].commutator(c["e_b"]) - c["e_g"]).is_zero()


def test_first_family_is_chevalley_combination():
    # U = H_a + lam H_b, X = e_a, Y = e_b, Z = e_g after clearing sqrt(2)
    c = chevalley_sl3()
    lam = gauss(Fraction(1, 2))
    u, x, y, z = sasaki_basis("I", lam)
    lift = lambda m: m.map_entries(lambda v: as_sqrt2(v))
    assert (lift(u) - c["H_a"] - c["H_b"].scale(as_sqrt2(lam))).is_zero()
    from hyperlie.scalars import SQRT2

    assert (lift(x).scale(SQRT2 * Fraction(1, 2)) - c["e_a"]).is_zero()
    assert (lift(y).scale(SQRT2 * Fraction(1, 2)) - c["e_b"]).is_zero()
    assert (lift(z) - c["e_g"]).is_zero()


def test_corrected_bases_are_invariant_subalgebras():
    for mats in (
        family_iii_basis(),
        family_iv_basis(2),
        family_iv_basis(1),
        family_iv_basis(Fraction(1, 2)),
        family_v_basis(),
        family_vii_inf_basis(),
    ):
        rep = invariant_subalgebra_report(mats, QISQRT2)
        assert rep == {"dim": 4, "bracket_closed": True, "direct_sum": True}
    with pytest.raises(DenominatorZeroError):
        family_iv_basis(0)


def test_koszul_form_abelian_zero():
    L = LieAlgebra(4, QQ, {})
    from hyperlie.structures import adapted_block_j1_j2

    j1, _ = adapted_block_j1_j2(1, QQ)
    for k in range(4):
        assert koszul_form(L, j1, basis_vector(4, k, QQ)) == 0


def test_koszul_remark_traces():
    for n in (1, 2):
        base, hat = koszul_remark_traces(n)
        assert base == 2 * n + 2
        assert hat == 2 * base


def test_gl_to_sl_is_homomorphism():
    gl = build_gl(2)
    sl = build_sl(2)
    inc = gl_to_sl(2, gl, sl)
    rng = random.Random(41)
    for _ in range(10):
        x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
        y = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
        lhs = inc.matrix.apply(gl.algebra.bracket(x, y))
        rhs = sl.algebra.bracket(inc.matrix.apply(x), inc.matrix.apply(y))
        assert lhs == rhs
    # image matrices are traceless by construction
    for mat in gl.basis_mats:
        assert embed_gl_matrix(mat).trace() == 0


def test_sl_to_sl_plus2_homomorphism_and_hat_compat():
    dom_s = cp_structure_sl(1)
    cod_s = cp_structure_sl(2)
    inc = sl_to_sl_plus2(1, dom_s.sl, cod_s.sl)
    rng = random.Random(43)
    for _ in range(8):
        x = tuple(Fraction(rng.randint(-2, 2)) for _ in range(8))
        y = tuple(Fraction(rng.randint(-2, 2)) for _ in range(8))
        lhs = inc.matrix.apply(dom_s.sl.algebra.bracket(x, y))
        rhs = cod_s.sl.algebra.bracket(inc.matrix.apply(x), inc.matrix.apply(y))
        assert lhs == rhs
    # real-level structure compatibility
    for k in range(8):
        e = basis_vector(8, k, QQ)
        assert inc.matrix.apply(dom_s.cp.j.apply(e)) == cod_s.cp.j.apply(
            inc.matrix.apply(e)
        )
    # hat-level compatibility with the hypercomplex structures
    dom = hypercomplex_sl_c(1)
    cod = hypercomplex_sl_c(2)
    hm = hat_map(inc.matrix, dom, cod)
    for a in ("j1", "j2", "j3"):
        lhs = hm @ getattr(dom.structure, a)
        rhs = getattr(cod.structure, a) @ hm
        assert (lhs - rhs).is_zero(), a


def test_gl_to_gl_plus2_homomorphism():
    dom = build_gl(2)
    cod = build_gl(4)
    inc = gl_to_gl_plus2(1, dom, cod)
    rng = random.Random(47)
    for _ in range(8):
        x = tuple(Fraction(rng.randint(-2, 2)) for _ in range(4))
        y = tuple(Fraction(rng.randint(-2, 2)) for _ in range(4))
        lhs = inc.matrix.apply(dom.algebra.bracket(x, y))
        rhs = cod.algebra.bracket(inc.matrix.apply(x), inc.matrix.apply(y))
        assert lhs == rhs


def test_dagger_matrices_pad_blocks():
    x = Mat([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]])
    padded = dagger_gl_matrix(x, 1)
    assert padded.rows[0] == (Fraction(1), Fraction(0), Fraction(2), Fraction(0))
    assert padded.rows[1] == (Fraction(0),) * 4
    s = build_sl(2).basis_mats[0]
    ds = dagger_sl_matrix(s, 1)
    assert ds.nrows == 5 and ds.trace() == 0
