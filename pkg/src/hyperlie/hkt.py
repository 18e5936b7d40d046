"""Hyper-Hermitian metric families as exact solution spaces of linear
constraints, and feasibility of the torsion-compatibility equations with
positive-definiteness certificates.

Everything is decided exactly: infeasibility is certified by a forced
zero diagonal entry or a 2x2 principal minor that is non-positive on the
whole family; feasibility by an explicit rational positive-definite
member.  When neither certificate is found the result is undetermined
rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import random

from .liealg import LieAlgebra, Mat, SpanSolver, Subspace, nullspace
from .scalars import QQ
from .structures import Hypercomplex, InducedHypercomplex


class RestrictionError(ValueError):
    pass


def _sym_pairs(d: int):
    return [(i, j) for i in range(d) for j in range(i, d)]


def _sym_from_params(d: int, values: Sequence) -> Mat:
    rows = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), v in zip(_sym_pairs(d), values):
        rows[i][j] = v
        rows[j][i] = v
    return Mat(rows)


@dataclass(frozen=True)
class MetricFamily:
    """Affine family particular + span(free_directions) of symmetric forms."""

    dim: int
    particular: Mat
    free_directions: tuple

    @property
    def rank(self) -> int:
        return len(self.free_directions)

    def member(self, coeffs: Sequence) -> Mat:
        acc = self.particular
        for c, f in zip(coeffs, self.free_directions):
            acc = acc + f.scale(c)
        return acc

    def span(self) -> Subspace:
        return Subspace.from_vectors(
            [f.flatten() for f in self.free_directions], self.dim * self.dim, QQ
        )


def _signed_permutation(m: Mat):
    """(perm, signs) with column i supported at row perm[i] with entry
    signs[i] = +-1, or None when m is not of that shape."""
    n = m.nrows
    perm, signs = [0] * n, [Fraction(0)] * n
    for i in range(n):
        nz = [(r, m.rows[r][i]) for r in range(n) if m.rows[r][i] != 0]
        if len(nz) != 1 or nz[0][1] not in (1, -1):
            return None
        perm[i], signs[i] = nz[0]
    return perm, signs


class _SignedUnionFind:
    """Union-find with +-1 edge signs; an orbit dies on a sign conflict."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.sign = [1] * n  # value[x] = sign[x] * value[root]
        self.dead = [False] * n

    def find(self, x: int):
        if self.parent[x] == x:
            return x, 1
        path = []
        cur = x
        while self.parent[cur] != cur:
            path.append(cur)
            cur = self.parent[cur]
        root = cur
        s = 1
        for node in reversed(path):  # closest to the root first
            s *= self.sign[node]
            self.parent[node] = root
            self.sign[node] = s
        return root, self.sign[x]

    def union(self, x: int, y: int, s: int):
        """Impose value[x] = s * value[y]."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            if sx != s * sy:
                self.dead[rx] = True
            return
        # value[rx] = (s * sy / sx) * value[ry]
        self.parent[rx] = ry
        self.sign[rx] = sx * s * sy
        self.dead[ry] = self.dead[ry] or self.dead[rx]


def hermitian_family(L: LieAlgebra, h: Hypercomplex) -> MetricFamily:
    """All symmetric forms with g(J_a x, J_a y) = g(x, y) for a = 1, 2.

    The third compatibility follows from J3 = J1 J2 and is asserted on the
    returned generators rather than re-imposed.  Signed-permutation
    structures (every catalog case) take a union-find fast path; anything
    else falls back to a generic nullspace.
    """
    d = L.dim
    pairs = _sym_pairs(d)
    pos = {p: t for t, p in enumerate(pairs)}
    decomp = [_signed_permutation(j) for j in (h.j1, h.j2)]
    if all(x is not None for x in decomp):
        uf = _SignedUnionFind(len(pairs))
        for perm, signs in decomp:
            for i in range(d):
                for j in range(i, d):
                    a, b = perm[i], perm[j]
                    key = (a, b) if a <= b else (b, a)
                    uf.union(pos[(i, j)], pos[key], int(signs[i] * signs[j]))
        orbits: dict[int, list] = {}
        for t in range(len(pairs)):
            root, s = uf.find(t)
            orbits.setdefault(root, []).append((t, s))
        solutions = []
        for root in sorted(orbits):
            if uf.dead[root]:
                continue
            sol = [Fraction(0)] * len(pairs)
            for t, s in orbits[root]:
                sol[t] = Fraction(s)
            solutions.append(tuple(sol))
    else:
        cond_rows = []
        for jmat in (h.j1, h.j2):
            jr = jmat.rows
            for i in range(d):
                for j in range(i, d):
                    cond = [Fraction(0)] * len(pairs)
                    for a in range(d):
                        ja_i = jr[a][i]
                        if ja_i == 0:
                            continue
                        for b in range(d):
                            jb_j = jr[b][j]
                            if jb_j == 0:
                                continue
                            key = (a, b) if a <= b else (b, a)
                            cond[pos[key]] += ja_i * jb_j
                    cond[pos[(i, j)]] -= 1
                    if any(c != 0 for c in cond):
                        cond_rows.append(tuple(cond))
        solutions = nullspace(Mat(cond_rows), QQ) if cond_rows else [
            tuple(
                Fraction(1) if s == t else Fraction(0)
                for s in range(len(pairs))
            )
            for t in range(len(pairs))
        ]
    mats = tuple(_sym_from_params(d, sol) for sol in solutions)
    for g in mats:
        assert (h.j3.transpose() @ g @ h.j3 - g).is_zero()
    zero = Mat.zeros(d, d, QQ)
    return MetricFamily(d, zero, mats)


def _sparse_form(g: Mat, u, v):
    """u^T g v evaluated over the supports of u and v."""
    s = Fraction(0)
    rows = g.rows
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        row = rows[i]
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            s += ui * row[j] * vj
    return s


def _torsion_pairs(L: LieAlgebra, jmat: Mat, x, y, z):
    """The three (bracket, argument) pairs of one torsion sum."""
    jx, jy, jz = jmat.apply(x), jmat.apply(y), jmat.apply(z)
    return (
        (L.bracket(jx, jy), z),
        (L.bracket(jy, jz), x),
        (L.bracket(jz, jx), y),
    )


def _torsion_sum(L: LieAlgebra, jmat: Mat, g: Mat, x, y, z):
    return sum(
        (_sparse_form(g, u, v) for u, v in _torsion_pairs(L, jmat, x, y, z)),
        Fraction(0),
    )


def hkt_constrain(
    L: LieAlgebra, h: Hypercomplex, fam: MetricFamily, triples=None,
    vector_triples=None,
) -> MetricFamily:
    """Impose equality of the three torsion sums on the given triples.

    triples (index triples) defaults to all i < j < k basis triples;
    vector_triples optionally adds arbitrary coordinate-vector triples.
    The result is always a subfamily of the input.
    """
    base = L.basis()
    if triples is None and vector_triples is None:
        d = L.dim
        triples = [
            (i, j, k)
            for i in range(d)
            for j in range(i + 1, d)
            for k in range(j + 1, d)
        ]
    work = [(base[i], base[j], base[k]) for (i, j, k) in (triples or [])]
    work.extend(vector_triples or [])
    cond_rows = []
    for (x, y, z) in work:
        pairs = [_torsion_pairs(L, jm, x, y, z) for jm in (h.j1, h.j2, h.j3)]
        row12 = []
        row23 = []
        for f in fam.free_directions:
            s1, s2, s3 = (
                sum((_sparse_form(f, u, v) for u, v in p), Fraction(0))
                for p in pairs
            )
            row12.append(s1 - s2)
            row23.append(s2 - s3)
        for row in (row12, row23):
            if any(c != 0 for c in row):
                cond_rows.append(tuple(row))
    if not cond_rows:
        return fam
    combos = nullspace(Mat(cond_rows), QQ)
    sparse = [
        [(i, j, v) for i, row in enumerate(f.rows) for j, v in enumerate(row) if v != 0]
        for f in fam.free_directions
    ]
    mats = []
    for t in combos:
        rows = [[Fraction(0)] * fam.dim for _ in range(fam.dim)]
        for c, entries in zip(t, sparse):
            if c == 0:
                continue
            for i, j, v in entries:
                rows[i][j] += c * v
        mats.append(Mat(rows))
    return MetricFamily(fam.dim, fam.particular, tuple(mats))


def _is_psd(m: Mat) -> bool:
    """Exact positive-semidefiniteness over the rationals."""
    rows = [list(r) for r in m.rows]
    n = len(rows)
    active = list(range(n))
    while active:
        piv = None
        for idx in active:
            if rows[idx][idx] > 0:
                piv = idx
                break
            if rows[idx][idx] < 0:
                return False
        if piv is None:
            # all active diagonal entries are zero: need the block to vanish
            return all(
                rows[i][j] == 0 for i in active for j in active
            )
        active.remove(piv)
        p = rows[piv][piv]
        for i in active:
            ci = rows[i][piv]
            if ci == 0:
                continue
            f = ci / p
            for j in active:
                rows[i][j] -= f * rows[piv][j]
            rows[i][piv] = Fraction(0)
            rows[piv][i] = Fraction(0)
    return True


def _is_pd(m: Mat) -> bool:
    """Exact positive-definiteness via leading principal minors."""
    rows = [list(r) for r in m.rows]
    n = len(rows)
    for k in range(n):
        if rows[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = rows[i][k] / rows[k][k]
            if f == 0:
                continue
            for j in range(k, n):
                rows[i][j] -= f * rows[k][j]
    return True


def pd_feasibility(fam: MetricFamily, witness_attempts: int = 200, seed: int = 11) -> dict:
    """Certificate-based feasibility of a positive-definite member.

    Returns {"status": "infeasible", "certificate": ...} when a diagonal
    entry is forced to zero or a 2x2 principal minor is non-positive on
    the whole family, {"status": "feasible", "witness": Mat} when an exact
    positive-definite member is found, else {"status": "undetermined"}.
    """
    d = fam.dim
    # forced zero diagonal
    for t in range(d):
        if fam.particular.rows[t][t] == 0 and all(
            f.rows[t][t] == 0 for f in fam.free_directions
        ):
            return {
                "status": "infeasible",
                "certificate": {"kind": "zero_diagonal", "index": t},
            }
    # 2x2 principal minors that are non-positive on the whole family
    if fam.particular.is_zero():
        r = fam.rank
        for a in range(d):
            for b in range(a + 1, d):
                u = [f.rows[a][a] for f in fam.free_directions]
                v = [f.rows[b][b] for f in fam.free_directions]
                w = [f.rows[a][b] for f in fam.free_directions]
                # minor(t) = (u.t)(v.t) - (w.t)^2 as a quadratic form
                q = [
                    [
                        Fraction(u[s] * v[t] + u[t] * v[s], 2) - w[s] * w[t]
                        for t in range(r)
                    ]
                    for s in range(r)
                ]
                if _is_psd(Mat(q).scale(Fraction(-1))):
                    return {
                        "status": "infeasible",
                        "certificate": {
                            "kind": "nonpositive_minor",
                            "indices": (a, b),
                        },
                    }
    # witness search: the identity, then seeded rational combinations
    if fam.free_directions:
        solver = SpanSolver([f.flatten() for f in fam.free_directions], QQ)
        target = (Mat.identity(d, QQ) - fam.particular).flatten()
        coeffs = solver.coords(target)
        if coeffs is not None:
            return {"status": "feasible", "witness": Mat.identity(d, QQ)}
    rng = random.Random(seed)
    for _ in range(witness_attempts):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in fam.free_directions]
        candidate = fam.member(coeffs)
        if _is_pd(candidate):
            return {"status": "feasible", "witness": candidate}
    return {"status": "undetermined"}


def pullback(g: Mat, inclusion: Mat) -> Mat:
    """The bilinear form pulled back along the inclusion columns."""
    return inclusion.transpose() @ g @ inclusion


def subalgebra_restriction_check(
    cod: InducedHypercomplex, dom: InducedHypercomplex, inclusion: Mat
) -> dict:
    """Compatibility of the torsion constraint systems along an inclusion.

    inclusion maps the smaller hat algebra into the larger one and must
    intertwine the hypercomplex structures.  Verifies that pullbacks of
    the larger constrained family lie inside the smaller one, so that an
    infeasibility certificate on the subalgebra rules out the whole
    algebra.
    """
    for a in ("j1", "j2", "j3"):
        lhs = inclusion @ getattr(dom.structure, a)
        rhs = getattr(cod.structure, a) @ inclusion
        if not (lhs - rhs).is_zero():
            raise RestrictionError(f"inclusion does not intertwine {a}")
    # the big family only needs the constraints carried by image triples:
    # these are exactly the ones whose pullbacks generate the small system
    d_small = dom.hat.algebra.dim
    images = [inclusion.column(k) for k in range(d_small)]
    image_triples = [
        (images[i], images[j], images[k])
        for i in range(d_small)
        for j in range(i + 1, d_small)
        for k in range(j + 1, d_small)
    ]
    big = hkt_constrain(
        cod.hat.algebra,
        cod.structure,
        hermitian_family(cod.hat.algebra, cod.structure),
        triples=[],
        vector_triples=image_triples,
    )
    small = hkt_constrain(
        dom.hat.algebra,
        dom.structure,
        hermitian_family(dom.hat.algebra, dom.structure),
    )
    small_span = small.span()
    contained = all(
        small_span.contains(pullback(f, inclusion).flatten())
        for f in big.free_directions
    )
    sub_feas = pd_feasibility(small)
    return {
        "invariant": True,
        "pullback_contained": contained,
        "sub_status": sub_feas["status"],
        "sub_certificate": sub_feas.get("certificate"),
        "propagates": contained and sub_feas["status"] == "infeasible",
    }
