from fractions import Fraction

import pytest

from hyperlie.catalog import (
    gl_to_gl_plus2,
    gl_to_sl,
    hat_map,
    hypercomplex_gl_c,
    hypercomplex_sl_c,
)
from hyperlie.hkt import (
    MetricFamily,
    RestrictionError,
    _is_pd,
    _is_psd,
    hermitian_family,
    hkt_constrain,
    pd_feasibility,
    pullback,
    subalgebra_restriction_check,
)
from hyperlie.liealg import LieAlgebra, Mat, Subspace
from hyperlie.scalars import QQ
from hyperlie.structures import adapted_block_j1_j2, hypercomplex


def displayed_gl2_shape(params):
    a11, a13, a14, a17, a18, a33 = [Fraction(x) for x in params]
    return Mat(
        [
            [a11, 0, a13, a14, 0, 0, a17, a18],
            [0, a11, -a14, a13, 0, 0, -a18, a17],
            [a13, -a14, a33, 0, -a17, -a18, 0, 0],
            [a14, a13, 0, a33, a18, -a17, 0, 0],
            [0, 0, -a17, a18, a11, 0, a13, -a14],
            [0, 0, -a18, -a17, 0, a11, a14, a13],
            [a17, -a18, 0, 0, a13, a14, a33, 0],
            [a18, a17, 0, 0, -a14, a13, 0, a33],
        ]
    )


def test_gl2_hermitian_family_matches_displayed_shape():
    g = hypercomplex_gl_c(1)
    fam = hermitian_family(g.hat.algebra, g.structure)
    assert fam.rank == 6
    pats = [
        displayed_gl2_shape([1 if i == k else 0 for i in range(6)])
        for k in range(6)
    ]
    expected = Subspace.from_vectors([p.flatten() for p in pats], 64, QQ)
    assert fam.span() == expected


def test_hermitian_members_are_invariant():
    g = hypercomplex_gl_c(1)
    fam = hermitian_family(g.hat.algebra, g.structure)
    for f in fam.free_directions:
        for jm in (g.structure.j1, g.structure.j2, g.structure.j3):
            assert (jm.transpose() @ f @ jm - f).is_zero()
        assert (f - f.transpose()).is_zero()


def test_abelian_family_dimension_formula():
    # hyper-Hermitian forms on flat R^{4m} have dimension m(2m-1)
    for m in (1, 2):
        ab = LieAlgebra(4 * m, QQ, {})
        j1, j2 = adapted_block_j1_j2(m, QQ)
        h = hypercomplex(ab, j1, j2)
        fam = hermitian_family(ab, h)
        assert fam.rank == m * (2 * m - 1)
        # identity is a member and the constraints are vacuous
        assert pd_feasibility(fam)["status"] == "feasible"
        assert hkt_constrain(ab, h, fam).rank == fam.rank


def test_four_paper_triples_force_diagonal_zero():
    g = hypercomplex_gl_c(1)
    fam = hermitian_family(g.hat.algebra, g.structure)
    fam4 = hkt_constrain(
        g.hat.algebra, g.structure, fam,
        triples=[(0, 1, 2), (0, 1, 3), (0, 1, 7), (1, 2, 3)],
    )
    assert fam4.rank == 2
    for f in fam4.free_directions:
        for t in range(8):
            assert f.rows[t][t] == 0


def test_gl2_full_constrain_infeasible():
    g = hypercomplex_gl_c(1)
    fam = hermitian_family(g.hat.algebra, g.structure)
    full = hkt_constrain(g.hat.algebra, g.structure, fam)
    assert full.rank == 2
    feas = pd_feasibility(full)
    assert feas["status"] == "infeasible"
    assert feas["certificate"]["kind"] == "zero_diagonal"
    # certificate re-verifies on every family member
    idx = feas["certificate"]["index"]
    for f in full.free_directions:
        assert f.rows[idx][idx] == 0


def test_constrain_is_monotone():
    g = hypercomplex_gl_c(1)
    fam = hermitian_family(g.hat.algebra, g.structure)
    constrained = hkt_constrain(g.hat.algebra, g.structure, fam)
    assert fam.span().contains_subspace(constrained.span())


def test_sl3c_direct_solve_infeasible():
    ind = hypercomplex_sl_c(1)
    fam = hermitian_family(ind.hat.algebra, ind.structure)
    full = hkt_constrain(ind.hat.algebra, ind.structure, fam)
    feas = pd_feasibility(full)
    assert feas["status"] == "infeasible"
    assert feas["certificate"]["kind"] == "zero_diagonal"


def test_full_symmetric_family_feasible_with_identity():
    d = 3
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    mats = []
    for (i, j) in pairs:
        rows = [[Fraction(0)] * d for _ in range(d)]
        rows[i][j] = rows[j][i] = Fraction(1)
        mats.append(Mat(rows))
    fam = MetricFamily(d, Mat.zeros(d, d, QQ), tuple(mats))
    feas = pd_feasibility(fam)
    assert feas["status"] == "feasible"
    assert feas["witness"] == Mat.identity(d, QQ)


def test_nonpositive_minor_certificate():
    # g = [[t, s], [s, -t]]: every member has det = -t^2 - s^2 <= 0
    f1 = Mat([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]])
    f2 = Mat([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]])
    fam = MetricFamily(2, Mat.zeros(2, 2, QQ), (f1, f2))
    feas = pd_feasibility(fam)
    assert feas["status"] == "infeasible"
    assert feas["certificate"]["kind"] == "nonpositive_minor"


def test_psd_and_pd_helpers():
    assert _is_psd(Mat([[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]))
    assert _is_psd(Mat([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]))
    assert not _is_psd(Mat([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]))
    assert _is_pd(Mat([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]]))
    assert not _is_pd(Mat([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]]))


def test_restriction_chain_gl2_sl3():
    g = hypercomplex_gl_c(1)
    ind = hypercomplex_sl_c(1)
    hm = hat_map(gl_to_sl(2).matrix, g, ind)
    rep = subalgebra_restriction_check(ind, g, hm)
    assert rep["pullback_contained"]
    assert rep["sub_status"] == "infeasible"
    assert rep["propagates"]


def test_restriction_chain_gl2_gl4():
    g = hypercomplex_gl_c(1)
    g4 = hypercomplex_gl_c(2)
    hm = hat_map(gl_to_gl_plus2(1).matrix, g, g4)
    rep = subalgebra_restriction_check(g4, g, hm)
    assert rep["pullback_contained"] and rep["propagates"]


def test_restriction_trivial_full_algebra():
    g = hypercomplex_gl_c(1)
    rep = subalgebra_restriction_check(g, g, Mat.identity(8, QQ))
    assert rep["pullback_contained"]


def test_restriction_rejects_non_intertwining():
    g = hypercomplex_gl_c(1)
    ind = hypercomplex_sl_c(1)
    rows = [[Fraction(0)] * 8 for _ in range(16)]
    rows[0][0] = Fraction(1)
    with pytest.raises(RestrictionError):
        subalgebra_restriction_check(ind, g, Mat(rows))
