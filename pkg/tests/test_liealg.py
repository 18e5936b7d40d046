import random
from fractions import Fraction

import pytest

from hyperlie.liealg import (
    DependentBasisError,
    LieAlgebra,
    LieAlgebraError,
    Mat,
    NotClosedError,
    RealifiedAlgebra,
    Subspace,
    algebra_from_json,
    algebra_to_json,
    basis_vector,
    complexify,
    from_matrix_basis,
    mat_inverse,
    nullspace,
    realify,
    sigma,
    solve_in_span,
    span_saturate,
    vec_is_zero,
)
from hyperlie.scalars import QI, QQ, GaussRational, gauss


def E(i, j, n, ring=QQ):
    rows = [[ring.zero()] * n for _ in range(n)]
    rows[i][j] = ring.one()
    return Mat(rows)


def sl2_matrices():
    h = E(0, 0, 2) - E(1, 1, 2)
    e = E(0, 1, 2)
    f = E(1, 0, 2)
    return [h, e, f]


def test_from_matrix_basis_sl2_bracket_matches_commutators():
    algebra, coords = from_matrix_basis(sl2_matrices(), QQ)
    mats = sl2_matrices()
    rng = random.Random(3)
    for _ in range(20):
        xc = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        yc = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        xm = Mat.zeros(2, 2, QQ)
        ym = Mat.zeros(2, 2, QQ)
        for c, m in zip(xc, mats):
            xm = xm + m.scale(c)
        for c, m in zip(yc, mats):
            ym = ym + m.scale(c)
        assert algebra.bracket(xc, yc) == coords(xm.commutator(ym))


def test_sl2_h_e_bracket():
    algebra, _ = from_matrix_basis(sl2_matrices(), QQ)
    h = basis_vector(3, 0, QQ)
    e = basis_vector(3, 1, QQ)
    assert algebra.bracket(h, e) == (0, 2, 0)


def test_bracket_antisymmetry_random():
    algebra, _ = from_matrix_basis(sl2_matrices(), QQ)
    rng = random.Random(11)
    for _ in range(10):
        x = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        assert vec_is_zero(algebra.bracket(x, x))


def test_from_matrix_basis_errors_and_small_cases():
    one = from_matrix_basis([E(0, 1, 2)], QQ)[0]
    assert one.dim == 1 and not one.brackets

    solvable, _ = from_matrix_basis([E(0, 0, 2), E(0, 1, 2)], QQ)
    assert solvable.basis_bracket(0, 1) == {1: Fraction(1)}

    with pytest.raises(NotClosedError):
        from_matrix_basis([E(0, 1, 2), E(1, 0, 2)], QQ)
    with pytest.raises(DependentBasisError):
        from_matrix_basis([E(0, 1, 2), E(0, 1, 2).scale(Fraction(2))], QQ)


def test_check_jacobi_and_corruption():
    algebra, _ = from_matrix_basis(sl2_matrices(), QQ)
    assert algebra.check_jacobi() == []
    bad = {k: dict(v) for k, v in algebra.brackets.items()}
    bad.setdefault((1, 2), {})[1] = bad.get((1, 2), {}).get(1, Fraction(0)) + 1
    corrupted = LieAlgebra(3, QQ, bad)
    assert corrupted.check_jacobi() != []


def test_complexify_and_realify_abelian():
    ab = LieAlgebra(2, QQ, {})
    abc = complexify(ab)
    assert abc.ring is QI and abc.dim == 2
    re = realify(LieAlgebra(1, QI, {}))
    assert re.algebra.dim == 2 and not re.algebra.brackets


def test_realify_bracket_compatibility():
    algebra, _ = from_matrix_basis(sl2_matrices(), QQ)
    lc = complexify(algebra)
    re = realify(lc)
    assert re.algebra.check_jacobi() == []
    rng = random.Random(17)
    for _ in range(15):
        x = tuple(
            gauss(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)
        )
        y = tuple(
            gauss(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)
        )
        lhs = re.to_real(lc.bracket(x, y))
        rhs = re.algebra.bracket(re.to_real(x), re.to_real(y))
        assert lhs == rhs
        assert re.to_complex(re.to_real(x)) == x


def test_realify_with_ordering_permutation():
    algebra, _ = from_matrix_basis(sl2_matrices(), QQ)
    lc = complexify(algebra)
    ordering = (0, 3, 1, 4, 2, 5)
    re = realify(lc, ordering)
    assert re.algebra.check_jacobi() == []
    x = (gauss(1, 2), gauss(0, 1), gauss(3))
    default = realify(lc)
    permuted = re.to_real(x)
    plain = default.to_real(x)
    assert permuted == tuple(plain[ordering[p]] for p in range(6))
    with pytest.raises(LieAlgebraError):
        realify(lc, (0, 0, 1, 2, 3, 4))


def test_realify_contains_original_as_first_block():
    algebra, _ = from_matrix_basis(sl2_matrices(), QQ)
    re = realify(complexify(algebra))
    for (i, j), targets in algebra.brackets.items():
        got = re.algebra.basis_bracket(i, j)
        assert got == {k: Fraction(c) for k, c in targets.items()}


def test_sigma_properties():
    lc = complexify(from_matrix_basis(sl2_matrices(), QQ)[0])
    x = (gauss(1, 2), gauss(0, -1), gauss(2, 5))
    y = (gauss(0, 3), gauss(1, 1), gauss(-2))
    assert sigma(lc, sigma(lc, x)) == x
    real = (gauss(1), gauss(2), gauss(-3))
    assert sigma(lc, real) == real
    ix = tuple(gauss(0, 1) * c for c in x)
    assert sigma(lc, ix) == tuple(gauss(0, -1) * c for c in sigma(lc, x))
    assert sigma(lc, lc.bracket(x, y)) == lc.bracket(sigma(lc, x), sigma(lc, y))


def test_span_saturate_heisenberg():
    # [e2, e1] = e3
    heis = LieAlgebra(3, QQ, {(0, 1): {2: Fraction(-1)}})
    ad_e2 = heis.ad(basis_vector(3, 1, QQ))
    out = span_saturate(3, QQ, [basis_vector(3, 0, QQ)], operators=[ad_e2.apply])
    expected = Subspace.from_vectors(
        [basis_vector(3, 0, QQ), basis_vector(3, 2, QQ)], 3, QQ
    )
    assert out == expected


def test_span_saturate_fixed_point_and_empty():
    full = span_saturate(2, QQ, [(Fraction(1), Fraction(0)), (0, Fraction(1))])
    assert full.dim == 2
    assert span_saturate(4, QQ, []).dim == 0


def test_span_saturate_idempotent():
    heis = LieAlgebra(3, QQ, {(0, 1): {2: Fraction(-1)}})
    ops = [heis.ad(b).apply for b in heis.basis()]
    out = span_saturate(3, QQ, [basis_vector(3, 0, QQ)], operators=ops,
                        bracket=heis.bracket)
    again = span_saturate(3, QQ, out.basis_rows, operators=ops,
                          bracket=heis.bracket)
    assert out == again


def test_subspace_reduction_stability_and_membership():
    rng = random.Random(23)
    vecs = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(5)) for _ in range(7)]
    s = Subspace.from_vectors(vecs, 5, QQ)
    assert s.reduce() == s
    assert s.reduce().reduce() == s.reduce()
    for v in vecs:
        assert s.contains(v)


def test_nullspace_and_solve():
    m = Mat([[Fraction(1), Fraction(2), Fraction(3)],
             [Fraction(2), Fraction(4), Fraction(6)]])
    null = nullspace(m, QQ)
    assert len(null) == 2
    for v in null:
        assert vec_is_zero(m.apply(v))
    coords = solve_in_span(
        [(Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))],
        (Fraction(3), Fraction(2)),
        QQ,
    )
    assert coords == (Fraction(1), Fraction(2))
    assert solve_in_span([(Fraction(1), Fraction(0))], (0, Fraction(1)), QQ) is None


def test_mat_inverse():
    m = Mat([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]])
    inv = mat_inverse(m, QQ)
    assert m @ inv == Mat.identity(2, QQ)
    with pytest.raises(LieAlgebraError):
        mat_inverse(Mat([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]), QQ)


def test_json_round_trip():
    algebra, _ = from_matrix_basis(sl2_matrices(), QQ, labels=("h", "e", "f"))
    doc = algebra_to_json(algebra)
    back = algebra_from_json(doc)
    assert back.dim == algebra.dim
    assert back.brackets == algebra.brackets
    assert back.labels == algebra.labels
    assert algebra_to_json(back) == doc

    lc = complexify(algebra)
    doc_c = algebra_to_json(lc)
    back_c = algebra_from_json(doc_c)
    assert back_c.brackets == lc.brackets


def test_json_rejects_bad_entries():
    doc = {
        "dim": 2,
        "field": "Q",
        "labels": None,
        "brackets": [{"i": 0, "j": 1, "k": 5, "re": [1, 1], "im": [0, 1]}],
    }
    with pytest.raises(LieAlgebraError):
        algebra_from_json(doc)
