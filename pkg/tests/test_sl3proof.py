from fractions import Fraction

import pytest

from hyperlie.liealg import Mat, vec_is_zero
from hyperlie.scalars import Poly, Var, as_poly, conj_variable, gauss, variable
from hyperlie.sl3proof import (
    Contradiction,
    Identity,
    ProofState,
    StepFailed,
    build_proof_context,
    case_i_steps,
    case_ii_branch_steps,
    case_ii_common_steps,
    lcvar,
    lvar,
    positive_norm_plus_constant,
    pure_norm_vars,
    replay_case,
    replay_theorem,
    symbolic_j,
    table_sigma,
    verify_equivalence_ii_iii,
    verify_step,
    _run_steps,
    LAMC,
)


def test_symbolic_j_pattern():
    j = symbolic_j()
    # zero diagonal blocks
    for r in range(4):
        for c in range(4):
            assert j.rows[r][c].is_zero()
            assert j.rows[4 + r][4 + c].is_zero()
    # upper-right block is the conjugate of the lower-left one
    for r in range(4):
        for c in range(4):
            assert j.rows[r][4 + c] == j.rows[4 + r][c].conjugate()
    # column-major numbering of the unknowns
    assert j.rows[4][0] == lvar(1)
    assert j.rows[7][0] == lvar(4)
    assert j.rows[4][1] == lvar(5)
    assert j.rows[7][3] == lvar(16)


def test_symbolic_j_commutes_with_conjugation():
    # sigma J = J sigma as an exact identity on the table algebra
    ctx = build_proof_context("II")
    j = ctx.j
    L = ctx.algebra
    for k in range(8):
        e = L.basis()[k]
        lhs = table_sigma(j.apply(e))
        rhs = tuple(j.apply(table_sigma(e)))
        assert lhs == rhs


def test_table_sigma_is_algebra_automorphism():
    ctx = build_proof_context("II")
    L = ctx.algebra
    base = L.basis()
    for i in range(8):
        for j in range(i + 1, 8):
            lhs = table_sigma(L.bracket(base[i], base[j]))
            rhs = L.bracket(table_sigma(base[i]), table_sigma(base[j]))
            assert tuple(lhs) == tuple(rhs)


def test_j_block_pattern_is_forced():
    # the pattern solves J(m) in sigma(m), J(sigma m) in m, sigma J = J sigma:
    # both diagonal blocks vanish and the off blocks are conjugate pairs.
    # A generic matrix with a nonzero diagonal block violates the first
    # two conditions; a non-conjugate off block violates the third.
    j = symbolic_j()
    bad = [list(r) for r in j.rows]
    bad[0][0] = Poly.one()  # J(m) would meet m
    ctx = build_proof_context("II")
    L = ctx.algebra
    e0 = L.basis()[0]
    img = Mat(bad).apply(e0)
    assert not all(p.is_zero() for p in img[:4])  # leaves sigma(m)
    bad2 = [list(r) for r in j.rows]
    bad2[0][4] = lvar(1)  # breaks sigma J = J sigma
    m2 = Mat(bad2)
    lhs = table_sigma(m2.apply(L.basis()[4]))
    rhs = tuple(m2.apply(table_sigma(L.basis()[4])))
    assert tuple(lhs) != rhs


def test_c11_displayed_form():
    ctx = build_proof_context("I")
    expected = (
        lvar(1) * lcvar(1)
        + lcvar(5) * lvar(2)
        + lcvar(9) * lvar(3)
        + lcvar(13) * lvar(4)
        + 1
    )
    assert ctx.c(1, 1) == expected
    # independent of the family
    assert build_proof_context("II").c(1, 1) == expected


def test_n184_displayed_form():
    ctx = build_proof_context("I")
    assert ctx.n(1, 8, 4) == as_poly(-2) * lvar(1) * lcvar(16) * (LAMC + 1)


def test_n136_displayed_form():
    ctx = build_proof_context("II")
    expected = as_poly(Fraction(2, 3)) * lvar(2) ** 2 - 6 * lvar(10) ** 2
    assert ctx.n(1, 3, 6) == expected


def test_replay_case_i():
    rep = replay_case("I")
    assert rep["steps"][-1] == ("contradiction", "C66>0")
    assert len(rep["steps"]) == 29


def test_replay_case_ii_both_branches():
    rep = replay_case("II")
    for eps in (1, -1):
        assert rep["branches"][eps][-1][0] == "contradiction"


def test_replay_theorem_total():
    rep = replay_theorem()
    assert rep["passed"]
    assert rep["verified_steps"] == 66


def test_tampered_claim_fails():
    ctx = build_proof_context("I")
    state = ProofState()
    bad = Identity("tampered", ("C", 1, 1), Poly.one())
    with pytest.raises(StepFailed):
        verify_step(ctx, state, bad)


def test_swapped_tables_fail():
    ctx = build_proof_context("II")
    with pytest.raises(StepFailed):
        _run_steps(ctx, ProofState(), case_i_steps())
    ctx2 = build_proof_context("I")
    with pytest.raises(StepFailed):
        _run_steps(ctx2, ProofState(), case_ii_common_steps())


def test_contradiction_patterns():
    assert positive_norm_plus_constant(lvar(6) * lcvar(6) + 1)
    assert not positive_norm_plus_constant(lvar(6) * lcvar(6) - 1)
    assert not positive_norm_plus_constant(lvar(6) * lcvar(7) + 1)
    assert pure_norm_vars(2 * lvar(12) * lcvar(12)) == {"l12"}
    assert pure_norm_vars(lvar(12) * lcvar(12) - lvar(3) * lcvar(3)) is None
    assert pure_norm_vars(Poly.zero()) is None


def test_substitution_state_consistency():
    # conjugate pairs are completed automatically and cumulative
    # substitutions compose in order
    state = ProofState()
    state.assign({Var("l16"): lvar(10)})
    state.assign({Var("l10"): Poly.zero()})
    reduced = state.reduce(lvar(16) + lcvar(16) + lvar(10))
    assert reduced.is_zero()


def test_verify_equivalence_ii_iii():
    rep = verify_equivalence_ii_iii()
    assert rep["passed"]
    assert rep["subalgebra"] == {
        "dim": 4,
        "bracket_closed": True,
        "direct_sum": True,
    }


def test_iii_specific_brackets():
    # spot values straight from the second family's tables
    from hyperlie.catalog import family_iii_basis
    from hyperlie.scalars import QISQRT2
    from hyperlie.liealg import from_matrix_basis

    mats = family_iii_basis()
    conj = lambda m: m.map_entries(lambda c: c.conjugate())
    full = mats + [conj(m) for m in mats]
    alg, coords = from_matrix_basis(full, QISQRT2)
    u, x, y, z = mats
    # [U, Y] = 3Y
    assert (u.commutator(y) - y.scale(Fraction(3))).is_zero()
    # [X, Z] = Y
    assert (x.commutator(z) - y).is_zero()
    # [Z, Z^s] = (U - U^s)/3
    zs = conj(z)
    us = conj(u)
    expected = (u - us).scale(Fraction(1, 3))
    assert (z.commutator(zs) - expected).is_zero()
