"""Finite-dimensional Lie algebras over exact scalar rings.

A LieAlgebra stores a sparse structure-constant tensor: brackets[(i, j)]
with i < j maps target indices k to scalars, and the antisymmetric
completion is implied.  Vectors are plain tuples of scalars in the basis
coordinates; endomorphisms are Mat values acting on column vectors
(left-action convention throughout, so the bracket of two endomorphisms
is the matrix commutator).

Subspaces are kept in fully reduced row echelon form over a field, which
makes equality of subspaces a tuple comparison and membership a
deterministic reduction.  Pivoting always selects the first nonzero
column; no scaling heuristics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .scalars import QI, QQ, GaussRational, as_gauss, ring_by_name


class LieAlgebraError(ValueError):
    pass


class DependentBasisError(LieAlgebraError):
    pass


class NotClosedError(LieAlgebraError):
    pass


def entry_is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


Vector = tuple


def vec_add(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x: Sequence) -> Vector:
    return tuple(c * a for a in x)


def vec_is_zero(x: Sequence) -> bool:
    return all(entry_is_zero(a) for a in x)


def basis_vector(dim: int, i: int, ring) -> Vector:
    return tuple(ring.one() if k == i else ring.zero() for k in range(dim))


class Mat:
    """Immutable exact matrix; column-action convention."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(n: int, ring) -> "Mat":
        one, zero = ring.one(), ring.zero()
        return Mat([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(nrows: int, ncols: int, ring) -> "Mat":
        zero = ring.zero()
        return Mat([[zero] * ncols for _ in range(nrows)])

    def __add__(self, other: "Mat") -> "Mat":
        return Mat(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat(
            tuple(a - b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.rows, other.rows)
        )

    def __neg__(self) -> "Mat":
        return Mat(tuple(-a for a in r) for r in self.rows)

    def scale(self, c) -> "Mat":
        return Mat(tuple(c * a for a in r) for r in self.rows)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise LieAlgebraError("matrix dimension mismatch in product")
        bt = other.rows
        out = []
        for row in self.rows:
            support = [(j, a) for j, a in enumerate(row) if not entry_is_zero(a)]
            if not support:
                out.append((0 * row[0],) * other.ncols if row else ())
                continue
            acc = [None] * other.ncols
            for j, a in support:
                brow = bt[j]
                for k in range(other.ncols):
                    term = a * brow[k]
                    acc[k] = term if acc[k] is None else acc[k] + term
            zero = 0 * row[0]
            out.append(tuple(zero if v is None else v for v in acc))
        return Mat(out)

    def apply(self, vec: Sequence) -> Vector:
        if self.ncols != len(vec):
            raise LieAlgebraError("matrix/vector dimension mismatch")
        out = []
        for row in self.rows:
            s = None
            for a, x in zip(row, vec):
                if entry_is_zero(a) or entry_is_zero(x):
                    continue
                term = a * x
                s = term if s is None else s + term
            out.append(0 * row[0] if s is None else s)
        return tuple(out)

    def transpose(self) -> "Mat":
        return Mat(zip(*self.rows)) if self.rows else Mat([])

    def trace(self):
        return sum((self.rows[i][i] for i in range(1, self.nrows)), self.rows[0][0])

    def commutator(self, other: "Mat") -> "Mat":
        return self @ other - other @ self

    def is_zero(self) -> bool:
        return all(entry_is_zero(a) for r in self.rows for a in r)

    def flatten(self) -> Vector:
        # row-major vectorization, shared by all endomorphism-space code
        return tuple(a for r in self.rows for a in r)

    @staticmethod
    def unflatten(vec: Sequence, nrows: int, ncols: int | None = None) -> "Mat":
        ncols = nrows if ncols is None else ncols
        return Mat(vec[i * ncols : (i + 1) * ncols] for i in range(nrows))

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def map_entries(self, f) -> "Mat":
        return Mat(tuple(f(a) for a in r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Mat([" + ",\n     ".join(str(list(r)) for r in self.rows) + "])"


def mat_inverse(m: Mat, ring) -> Mat:
    """Exact inverse over a field via Gauss-Jordan on [m | I]."""
    n = m.nrows
    if n != m.ncols:
        raise LieAlgebraError("only square matrices can be inverted")
    aug = [list(m.rows[i]) + list(Mat.identity(n, ring).rows[i]) for i in range(n)]
    for col in range(n):
        piv = next(
            (r for r in range(col, n) if not entry_is_zero(aug[r][col])), None
        )
        if piv is None:
            raise LieAlgebraError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ring.invert(aug[col][col])
        aug[col] = [inv * a for a in aug[col]]
        for r in range(n):
            if r != col and not entry_is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return Mat(row[n:] for row in aug)


class _Rref:
    """Incremental fully-reduced row echelon form over a field."""

    def __init__(self, width: int, ring):
        self.width = width
        self.ring = ring
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def residual(self, vec: Sequence) -> list:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if not entry_is_zero(c):
                for j in range(p, self.width):
                    v[j] = v[j] - c * row[j]
        return v

    def contains(self, vec: Sequence) -> bool:
        return all(entry_is_zero(a) for a in self.residual(vec))

    def coefficients(self, vec: Sequence) -> list | None:
        """Coefficients of vec on the reduced rows, or None if outside."""
        v = list(vec)
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            coeffs.append(c)
            if not entry_is_zero(c):
                for j in range(p, self.width):
                    v[j] = v[j] - c * row[j]
        if not all(entry_is_zero(a) for a in v):
            return None
        return coeffs

    def insert(self, vec: Sequence) -> bool:
        """Reduce vec and adopt it if independent; returns True if adopted."""
        v = self.residual(vec)
        p = next((j for j, a in enumerate(v) if not entry_is_zero(a)), None)
        if p is None:
            return False
        inv = self.ring.invert(v[p])
        v = [inv * a for a in v]
        for row in self.rows:
            c = row[p]
            if not entry_is_zero(c):
                for j in range(p, self.width):
                    row[j] = row[j] - c * v[j]
        at = next((k for k, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, p)
        return True


class Subspace:
    """Row-reduced spanning set of a linear subspace of an exact vector space."""

    __slots__ = ("basis_rows", "ambient_dim", "ring")

    def __init__(self, basis_rows, ambient_dim: int, ring):
        object.__setattr__(self, "basis_rows", tuple(tuple(r) for r in basis_rows))
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "ring", ring)

    @staticmethod
    def from_vectors(vectors: Iterable[Sequence], ambient_dim: int, ring) -> "Subspace":
        rr = _Rref(ambient_dim, ring)
        for v in vectors:
            rr.insert(v)
        return Subspace(rr.rows, ambient_dim, ring)

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    def _rref(self) -> _Rref:
        rr = _Rref(self.ambient_dim, self.ring)
        for r in self.basis_rows:
            rr.insert(r)
        return rr

    def contains(self, vec: Sequence) -> bool:
        return self._rref().contains(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        rr = self._rref()
        return all(rr.contains(r) for r in other.basis_rows)

    def reduce(self) -> "Subspace":
        return Subspace.from_vectors(self.basis_rows, self.ambient_dim, self.ring)

    def extended(self, vectors: Iterable[Sequence]) -> "Subspace":
        rr = self._rref()
        for v in vectors:
            rr.insert(v)
        return Subspace(rr.rows, self.ambient_dim, self.ring)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus-free approach: solve for members of self lying in other
        # via the nullspace of other's complement conditions.
        combined = list(self.basis_rows) + list(other.basis_rows)
        rows = nullspace(
            Mat([[row[j] for row in combined] for j in range(self.ambient_dim)]),
            self.ring,
        )
        vecs = []
        for coeffs in rows:
            v = [self.ring.zero()] * self.ambient_dim
            for c, row in zip(coeffs[: self.dim], self.basis_rows):
                for j in range(self.ambient_dim):
                    v[j] = v[j] + c * row[j]
            vecs.append(tuple(v))
        return Subspace.from_vectors(vecs, self.ambient_dim, self.ring)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis_rows == other.basis_rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis_rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def nullspace(m: Mat, ring) -> list[Vector]:
    """Basis of the right nullspace of m, via RREF free-column parametrization."""
    rr = _Rref(m.ncols, ring)
    for row in m.rows:
        rr.insert(row)
    pivots = set(rr.pivots)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [ring.zero()] * m.ncols
        v[f] = ring.one()
        for row, p in zip(rr.rows, rr.pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


class SpanSolver:
    """Express targets in a fixed list of independent spanning vectors.

    The reduction is performed once at construction; each coords() call
    costs a single back-substitution.  Raises DependentBasisError if the
    vectors are not independent.
    """

    def __init__(self, vectors: Sequence[Sequence], ring):
        self.vectors = [tuple(v) for v in vectors]
        self.ring = ring
        width = len(self.vectors[0]) if self.vectors else 0
        rr = _Rref(width, ring)
        transform: list[list] = []  # reduced row r = sum_s transform[r][s]*vectors[s]
        for idx, v in enumerate(self.vectors):
            v_red = list(v)
            t_red = [ring.zero()] * len(self.vectors)
            t_red[idx] = ring.one()
            for row, trow, p in zip(rr.rows, transform, rr.pivots):
                c = v_red[p]
                if not entry_is_zero(c):
                    for j in range(p, rr.width):
                        v_red[j] = v_red[j] - c * row[j]
                    for j in range(len(self.vectors)):
                        t_red[j] = t_red[j] - c * trow[j]
            p = next(
                (j for j, a in enumerate(v_red) if not entry_is_zero(a)), None
            )
            if p is None:
                raise DependentBasisError(
                    f"vector {idx} depends on the previous ones"
                )
            inv = ring.invert(v_red[p])
            v_red = [inv * a for a in v_red]
            t_red = [inv * a for a in t_red]
            for row, trow in zip(rr.rows, transform):
                c = row[p]
                if not entry_is_zero(c):
                    for j in range(p, rr.width):
                        row[j] = row[j] - c * v_red[j]
                    for j in range(len(self.vectors)):
                        trow[j] = trow[j] - c * t_red[j]
            at = next(
                (k for k, q in enumerate(rr.pivots) if q > p), len(rr.pivots)
            )
            rr.rows.insert(at, v_red)
            rr.pivots.insert(at, p)
            transform.insert(at, t_red)
        self._rr = rr
        self._transform = transform

    def coords(self, target: Sequence):
        """Coefficients on the original vectors, or None if target is outside."""
        alphas = self._rr.coefficients(target)
        if alphas is None:
            return None
        ring = self.ring
        out = [ring.zero()] * len(self.vectors)
        for a, trow in zip(alphas, self._transform):
            if entry_is_zero(a):
                continue
            for s in range(len(self.vectors)):
                out[s] = out[s] + a * trow[s]
        return tuple(out)


def solve_in_span(vectors: Sequence[Sequence], target: Sequence, ring):
    """One-shot convenience wrapper around SpanSolver."""
    return SpanSolver(vectors, ring).coords(target)


class LieAlgebra:
    """Lie algebra given by sparse structure constants over a scalar ring."""

    def __init__(self, dim: int, ring, brackets, labels=None, validate: bool = False):
        self.dim = dim
        self.ring = ring
        norm: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j), targets in brackets.items():
            if i == j:
                continue
            if i > j:
                i, j = j, i
                targets = {k: -c for k, c in targets.items()}
            entry = norm.setdefault((i, j), {})
            for k, c in targets.items():
                c = ring.coerce(c)
                if not ring.is_zero(c):
                    acc = entry.get(k)
                    acc = c if acc is None else acc + c
                    if ring.is_zero(acc):
                        entry.pop(k, None)
                    else:
                        entry[k] = acc
            if not entry:
                norm.pop((i, j), None)
        self.brackets = norm
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != dim:
                raise LieAlgebraError("labels length must equal dim")
        self.labels = labels
        if validate:
            failures = self.check_jacobi()
            if failures:
                raise LieAlgebraError(f"Jacobi identity fails at {failures[0][:3]}")

    def basis(self) -> list[Vector]:
        return [basis_vector(self.dim, i, self.ring) for i in range(self.dim)]

    def basis_bracket(self, i: int, j: int) -> dict[int, object]:
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise LieAlgebraError("vector dimension mismatch")
        sx = [(i, xi) for i, xi in enumerate(x) if not entry_is_zero(xi)]
        sy = [(j, yj) for j, yj in enumerate(y) if not entry_is_zero(yj)]
        out = [self.ring.zero()] * self.dim
        # iterate supports when sparse, structure constants when dense
        if len(sx) * len(sy) <= 2 * len(self.brackets):
            get = self.brackets.get
            for i, xi in sx:
                for j, yj in sy:
                    if i == j:
                        continue
                    if i < j:
                        targets = get((i, j))
                        coef = xi * yj
                    else:
                        targets = get((j, i))
                        coef = -(xi * yj)
                    if not targets:
                        continue
                    for k, c in targets.items():
                        out[k] = out[k] + coef * c
        else:
            for (i, j), targets in self.brackets.items():
                coef = x[i] * y[j] - x[j] * y[i]
                if entry_is_zero(coef):
                    continue
                for k, c in targets.items():
                    out[k] = out[k] + coef * c
        return tuple(out)

    def ad(self, x: Sequence) -> Mat:
        cols = [self.bracket(x, e) for e in self.basis()]
        return Mat(zip(*cols))

    def check_jacobi(self) -> list:
        """All basis triples (i, j, k) where the Jacobi sum fails, with residuals."""
        failures = []
        base = self.basis()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket(base[i], base[j])
                for k in range(j + 1, self.dim):
                    s = vec_add(
                        self.bracket(bij, base[k]),
                        vec_add(
                            self.bracket(self.bracket(base[j], base[k]), base[i]),
                            self.bracket(self.bracket(base[k], base[i]), base[j]),
                        ),
                    )
                    if not vec_is_zero(s):
                        failures.append((i, j, k, s))
        return failures

    def subalgebra(self, vectors: Sequence[Sequence], labels=None) -> "LieAlgebra":
        """Structure constants of a bracket-closed span, in the given basis."""
        solver = SpanSolver(vectors, self.ring)
        brackets = {}
        for i in range(len(vectors)):
            for j in range(i + 1, len(vectors)):
                w = self.bracket(vectors[i], vectors[j])
                coords = solver.coords(w)
                if coords is None:
                    raise NotClosedError(
                        f"bracket of span vectors {i}, {j} leaves the span"
                    )
                targets = {
                    k: c for k, c in enumerate(coords) if not self.ring.is_zero(c)
                }
                if targets:
                    brackets[(i, j)] = targets
        return LieAlgebra(len(vectors), self.ring, brackets, labels=labels)


def from_matrix_basis(mats: Sequence[Mat], ring, labels=None):
    """Lie algebra spanned by matrices, with commutator structure constants.

    Returns (algebra, coords) where coords maps a matrix in the span to its
    coordinate vector.  Raises DependentBasisError / NotClosedError.
    """
    flat = [m.flatten() for m in mats]
    solver = SpanSolver(flat, ring)
    brackets = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            w = mats[i].commutator(mats[j]).flatten()
            cw = solver.coords(w)
            if cw is None:
                raise NotClosedError(f"commutator of basis {i}, {j} leaves the span")
            targets = {k: c for k, c in enumerate(cw) if not ring.is_zero(c)}
            if targets:
                brackets[(i, j)] = targets
    algebra = LieAlgebra(len(mats), ring, brackets, labels=labels)

    def coords(m: Mat) -> Vector:
        res = solver.coords(m.flatten())
        if res is None:
            raise LieAlgebraError("matrix lies outside the span")
        return res

    return algebra, coords


def complexify(L: LieAlgebra) -> LieAlgebra:
    """Reinterpret a rational algebra over Q(i); constants are unchanged."""
    if L.ring is not QQ:
        raise LieAlgebraError("complexify expects an algebra over Q")
    brackets = {
        ij: {k: as_gauss(c) for k, c in t.items()} for ij, t in L.brackets.items()
    }
    return LieAlgebra(L.dim, QI, brackets, labels=L.labels)


class RealifiedAlgebra:
    """A complex algebra viewed as real, with the coordinate identification."""

    def __init__(self, algebra: LieAlgebra, ordering: Sequence[int], complex_dim: int):
        self.algebra = algebra
        self.ordering = tuple(ordering)  # new index -> default index
        self.inverse_ordering = tuple(
            self.ordering.index(p) for p in range(len(self.ordering))
        )
        self.complex_dim = complex_dim

    def to_real(self, z: Sequence[GaussRational]) -> Vector:
        default = [as_gauss(c).re for c in z] + [as_gauss(c).im for c in z]
        return tuple(default[self.ordering[p]] for p in range(2 * self.complex_dim))

    def to_complex(self, v: Sequence) -> Vector:
        default = [v[self.inverse_ordering[d]] for d in range(2 * self.complex_dim)]
        n = self.complex_dim
        return tuple(GaussRational(Fraction(default[k]), Fraction(default[n + k])) for k in range(n))


def realify(L: LieAlgebra, ordering: Sequence[int] | None = None) -> RealifiedAlgebra:
    """Underlying real algebra of dimension 2n of a Q(i)-algebra.

    The default real basis is (e_1..e_n, i*e_1..i*e_n); `ordering` permutes
    it (entry p gives the default index placed at position p).
    """
    if L.ring is not QI:
        raise LieAlgebraError("realify expects an algebra over Q(i)")
    n = L.dim
    if ordering is None:
        ordering = tuple(range(2 * n))
    ordering = tuple(ordering)
    if sorted(ordering) != list(range(2 * n)):
        raise LieAlgebraError("ordering must be a permutation of range(2n)")
    pos = {d: p for p, d in enumerate(ordering)}

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}

    def add(i_def: int, j_def: int, k_def: int, c: Fraction):
        if c == 0:
            return
        i, j = pos[i_def], pos[j_def]
        if i == j:
            return
        if i > j:
            i, j = j, i
            c = -c
        entry = brackets.setdefault((i, j), {})
        k = pos[k_def]
        entry[k] = entry.get(k, Fraction(0)) + c

    for (i, j), targets in L.brackets.items():
        for k, c in targets.items():
            c = as_gauss(c)
            # [e_i, e_j] = Re(c) e_k + Im(c) (i e_k)
            add(i, j, k, c.re)
            add(i, j, n + k, c.im)
            # [e_i, i e_j] = [i e_i, e_j] = -Im(c) e_k + Re(c) (i e_k)
            add(i, n + j, k, -c.im)
            add(i, n + j, n + k, c.re)
            add(n + i, j, k, -c.im)
            add(n + i, j, n + k, c.re)
            # [i e_i, i e_j] = -Re(c) e_k - Im(c) (i e_k)
            add(n + i, n + j, k, -c.re)
            add(n + i, n + j, n + k, -c.im)

    labels = None
    if L.labels is not None:
        default_labels = list(L.labels) + [f"i*{s}" for s in L.labels]
        labels = tuple(default_labels[ordering[p]] for p in range(2 * n))
    algebra = LieAlgebra(2 * n, QQ, brackets, labels=labels)
    return RealifiedAlgebra(algebra, ordering, n)


def sigma(L: LieAlgebra, v: Sequence) -> Vector:
    """Coordinate-wise conjugation w.r.t. the designated real-form basis."""
    return tuple(L.ring.conjugate(c) for c in v)


def span_saturate(
    ambient_dim: int,
    ring,
    seed: Iterable[Sequence],
    operators: Sequence[Callable[[Sequence], Sequence]] = (),
    bracket: Callable[[Sequence, Sequence], Sequence] | None = None,
) -> Subspace:
    """Smallest subspace containing seed, closed under operators and bracket.

    Generators are processed as a FIFO queue: each adopted generator is
    bracketed with all earlier ones and fed to every operator, and
    independent results are appended.  The result is the single-threaded
    deterministic closure.
    """
    rr = _Rref(ambient_dim, ring)
    gens: list[Vector] = []
    for v in seed:
        if rr.insert(v):
            gens.append(tuple(v))
    i = 0
    while i < len(gens):
        g = gens[i]
        if bracket is not None:
            for j in range(i):
                cand = bracket(g, gens[j])
                if rr.insert(cand):
                    gens.append(tuple(cand))
        for op in operators:
            cand = op(g)
            if rr.insert(cand):
                gens.append(tuple(cand))
        i += 1
    return Subspace(rr.rows, ambient_dim, ring)


def _fraction_pair(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _scalar_to_json(c, field: str) -> dict:
    g = as_gauss(c) if field == "Qi" else GaussRational(Fraction(c))
    return {"re": _fraction_pair(g.re), "im": _fraction_pair(g.im)}


def algebra_to_json(L: LieAlgebra) -> dict:
    """Structure-constant document: {dim, field, labels, brackets} with i < j."""
    if L.ring.name not in ("Q", "Qi"):
        raise LieAlgebraError("only Q and Qi algebras have a JSON form")
    entries = []
    for (i, j) in sorted(L.brackets):
        for k in sorted(L.brackets[(i, j)]):
            c = _scalar_to_json(L.brackets[(i, j)][k], L.ring.name)
            entries.append({"i": i, "j": j, "k": k, **c})
    return {
        "dim": L.dim,
        "field": L.ring.name,
        "labels": list(L.labels) if L.labels is not None else None,
        "brackets": entries,
    }


def algebra_from_json(doc: dict) -> LieAlgebra:
    ring = ring_by_name(doc["field"])
    brackets: dict[tuple[int, int], dict[int, object]] = {}
    for e in doc["brackets"]:
        i, j, k = e["i"], e["j"], e["k"]
        if not 0 <= i < j < doc["dim"] or not 0 <= k < doc["dim"]:
            raise LieAlgebraError(f"bracket entry out of range: {e}")
        re = Fraction(e["re"][0], e["re"][1])
        im = Fraction(e["im"][0], e["im"][1])
        if doc["field"] == "Q":
            if im != 0:
                raise LieAlgebraError("imaginary structure constant in a Q algebra")
            value = re
        else:
            value = GaussRational(re, im)
        brackets.setdefault((i, j), {})[k] = value
    return LieAlgebra(doc["dim"], ring, brackets, labels=doc.get("labels"))
