"""Exact scalar arithmetic: Gaussian rationals and sparse polynomials over Q(i).

Three scalar layers, all immutable and hashable where possible:

  Rational       alias of fractions.Fraction (always reduced, positive
                 denominator, zero is 0/1).
  GaussRational  a + b*i with a, b rational; a field.
  Poly           sparse multivariate polynomial with GaussRational
                 coefficients.  A monomial is a multiset of variables,
                 stored as a sorted tuple of (Var, exponent) pairs.

Variables come in conjugate pairs: Var("x") and Var("x", conjugated=True)
are independent generators, and conjugation of a Poly flips the flag on
every variable while conjugating every coefficient.  A variable may also
be declared as the formal inverse of 1 - v*conj(v) for another variable v
(see inverse_unit_var).  Such a variable d is fixed by conjugation (the
element 1 - v*conj(v) is) and products are normalized with the rewrite
d*v*conj(v) -> d - 1, which gives unique normal forms: the rewrite rule
comes from a single defining relation, so reduction is confluent and
exact zero-testing in the quotient ring stays decidable.

Term iteration is graded-lexicographic on (name, conjugated) pairs, so
printed and serialized forms are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction


class ScalarError(ValueError):
    """Invalid scalar operation (division by zero, inconsistent substitution)."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True)
class GaussRational:
    """Element of Q(i): re + im*i with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, GaussRational)):
            return NotImplemented
        other = as_gauss(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, GaussRational)):
            return NotImplemented
        return self + (-as_gauss(other))

    def __rsub__(self, other):
        return as_gauss(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, GaussRational)):
            return NotImplemented
        other = as_gauss(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ScalarError("division by zero in Q(i)")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * as_gauss(other).inverse()

    def __rtruediv__(self, other):
        return as_gauss(other) * self.inverse()

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_gauss(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"

    __repr__ = __str__


GAUSS_ZERO = GaussRational()
GAUSS_ONE = GaussRational(Fraction(1))
GAUSS_I = GaussRational(Fraction(0), Fraction(1))

ScalarLike = Union[int, Fraction, GaussRational]


def as_gauss(x: ScalarLike) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    return GaussRational(_as_fraction(x))


def gauss(re, im=0) -> GaussRational:
    return GaussRational(_as_fraction(re), _as_fraction(im))


@dataclass(frozen=True)
class Var:
    """Polynomial variable, one half of a conjugate pair.

    inverse_of marks the variable as the formal inverse of
    1 - v*conj(v) where v is the named base variable; such a variable is
    fixed by conjugation.
    """

    name: str
    conjugated: bool = False
    inverse_of: str | None = None

    def conjugate(self) -> "Var":
        if self.inverse_of is not None:
            return self
        return Var(self.name, not self.conjugated)

    def _key(self):
        return (self.name, self.conjugated)

    def __str__(self):
        return f"~{self.name}" if self.conjugated else self.name

    __repr__ = __str__


def variable(name: str) -> "Poly":
    return Poly.of_var(Var(name))


def conj_variable(name: str) -> "Poly":
    return Poly.of_var(Var(name, conjugated=True))


def inverse_unit_var(name: str, of: str) -> Var:
    """Variable representing 1/(1 - v*conj(v)) for the base variable named `of`."""
    return Var(name, conjugated=False, inverse_of=of)


# A monomial is a tuple of (Var, positive exponent) pairs, sorted by key.
Monomial = tuple

_EMPTY_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict[Var, int] = {}
    for v, e in a:
        exps[v] = exps.get(v, 0) + e
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda p: p[0]._key()))

def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_conjugate(m: Monomial) -> Monomial:
    return tuple(sorted(((v.conjugate(), e) for v, e in m), key=lambda p: p[0]._key()))


def _mono_sort_key(m: Monomial):
    # graded lex: total degree first, then the exponent sequence
    return (_mono_degree(m), tuple((v.name, v.conjugated, e) for v, e in m))


def _mono_reduce_step(m: Monomial):
    """One rewrite d*v*conj(v) -> d - 1 if applicable, else None.

    Returns (kept, dropped): kept keeps the inverse variable, dropped
    removes it; the caller adds them with coefficients (+c, -c).
    """
    exps = dict(m)
    by_key = {v._key(): v for v in exps}
    for v in exps:
        if v.inverse_of is None:
            continue
        base = by_key.get((v.inverse_of, False))
        conj = by_key.get((v.inverse_of, True))
        if base is None or conj is None:
            continue

        def rebuild(drop_inverse: bool) -> Monomial:
            out = dict(exps)
            for w in (base, conj) + ((v,) if drop_inverse else ()):
                out[w] -= 1
                if out[w] == 0:
                    del out[w]
            return tuple(sorted(out.items(), key=lambda p: p[0]._key()))

        return rebuild(False), rebuild(True)
    return None


def _normalize_terms(raw: Iterable[tuple[Monomial, GaussRational]]) -> dict:
    out: dict[Monomial, GaussRational] = {}
    work = list(raw)
    while work:
        mono, coeff = work.pop()
        if coeff.is_zero():
            continue
        red = _mono_reduce_step(mono)
        if red is not None:
            kept, dropped = red
            work.append((kept, coeff))
            work.append((dropped, -coeff))
            continue
        acc = out.get(mono, GAUSS_ZERO) + coeff
        if acc.is_zero():
            out.pop(mono, None)
        else:
            out[mono] = acc
    return out


class Poly:
    """Sparse multivariate polynomial over Q(i), normalized on construction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GaussRational] | None = None):
        object.__setattr__(self, "terms", _normalize_terms((terms or {}).items()))

    @staticmethod
    def _raw(normalized: dict) -> "Poly":
        p = Poly.__new__(Poly)
        object.__setattr__(p, "terms", normalized)
        return p

    @staticmethod
    def constant(c: ScalarLike) -> "Poly":
        c = as_gauss(c)
        if c.is_zero():
            return Poly._raw({})
        return Poly._raw({_EMPTY_MONO: c})

    @staticmethod
    def of_var(v: Var) -> "Poly":
        return Poly._raw({((v, 1),): GAUSS_ONE})

    @staticmethod
    def zero() -> "Poly":
        return Poly._raw({})

    @staticmethod
    def one() -> "Poly":
        return Poly.constant(1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _EMPTY_MONO in self.terms)

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant polynomial")
        return self.terms.get(_EMPTY_MONO, GAUSS_ZERO)

    def variables(self) -> set:
        return {v for mono in self.terms for v, _ in mono}

    def __add__(self, other):
        other = as_poly(other)
        # inputs are already reduced, so a plain merge stays reduced
        merged = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = merged.get(mono, GAUSS_ZERO) + coeff
            if acc.is_zero():
                merged.pop(mono, None)
            else:
                merged[mono] = acc
        return Poly._raw(merged)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __rsub__(self, other):
        return as_poly(other) + (-self)

    def __mul__(self, other):
        other = as_poly(other)
        raw: dict[Monomial, GaussRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                acc = raw.get(m, GAUSS_ZERO) + c1 * c2
                if acc.is_zero():
                    raw.pop(m, None)
                else:
                    raw[m] = acc
        return Poly._raw(_normalize_terms(raw.items()))

    __rmul__ = __mul__

    def __truediv__(self, scalar: ScalarLike):
        # scalar division only; Poly/Poly is deliberately unsupported
        return self * as_gauss(scalar).inverse()

    def __pow__(self, k: int):
        if k < 0:
            raise ScalarError("negative powers are not defined for Poly")
        out = Poly.one()
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "Poly":
        return Poly._raw(
            _normalize_terms(
                (_mono_conjugate(m), c.conjugate()) for m, c in self.terms.items()
            )
        )

    def substitute(self, assignment: Mapping[Var, "Poly | ScalarLike"]) -> "Poly":
        """Substitute values for variables, exactly.

        The assignment is completed to conjugate pairs: if v is assigned
        and conj(v) is not, conj(v) receives the conjugated value.  When
        both members of a pair are assigned the values must be conjugate
        to each other.
        """
        full: dict[Var, Poly] = {}
        for v, val in assignment.items():
            full[v] = as_poly(val)
        for v, val in list(full.items()):
            w = v.conjugate()
            if w == v:
                continue
            expected = val.conjugate()
            if w in full:
                if full[w] != expected:
                    raise ScalarError(
                        f"inconsistent assignment for conjugate pair {v}, {w}"
                    )
            else:
                full[w] = expected
        out = Poly.zero()
        for mono, coeff in self.terms.items():
            term = Poly.constant(coeff)
            for v, e in mono:
                factor = full.get(v)
                if factor is None:
                    factor = Poly.of_var(v)
                term = term * factor**e
            out = out + term
        return out

    def sorted_terms(self) -> list[tuple[Monomial, GaussRational]]:
        return sorted(self.terms.items(), key=lambda t: _mono_sort_key(t[0]))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = ["*".join([str(v)] * e) for v, e in mono]
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == GAUSS_ONE:
                parts.append(body)
            else:
                parts.append(f"{coeff}*{body}")
        return " + ".join(parts)

    __repr__ = __str__


PolyLike = Union[Poly, ScalarLike]


def as_poly(x: PolyLike) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.constant(as_gauss(x))


@dataclass(frozen=True)
class SqrtTwoGauss:
    """Element a + b*sqrt(2) of the quadratic extension Q(i, sqrt(2)).

    Needed exactly where classification bases carry a 1/sqrt(2)
    normalization that no rescaling removes.
    """

    a: GaussRational = GAUSS_ZERO
    b: GaussRational = GAUSS_ZERO

    def __add__(self, other):
        other = as_sqrt2(other)
        return SqrtTwoGauss(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return SqrtTwoGauss(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-as_sqrt2(other))

    def __rsub__(self, other):
        return as_sqrt2(other) + (-self)

    def __mul__(self, other):
        other = as_sqrt2(other)
        return SqrtTwoGauss(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "SqrtTwoGauss":
        # (a + b r)(a - b r) = a^2 - 2 b^2, nonzero unless a = b = 0
        n = self.a * self.a - 2 * self.b * self.b
        if n.is_zero():
            raise ScalarError("division by zero in Q(i, sqrt2)")
        ninv = n.inverse()
        return SqrtTwoGauss(self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        return self * as_sqrt2(other).inverse()

    def conjugate(self) -> "SqrtTwoGauss":
        return SqrtTwoGauss(self.a.conjugate(), self.b.conjugate())

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = as_sqrt2(other)
        if not isinstance(other, SqrtTwoGauss):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b.is_zero():
            return hash(self.a)
        return hash((self.a, self.b))

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        return f"({self.a}+{self.b}*r2)"

    __repr__ = __str__


SQRT2 = SqrtTwoGauss(GAUSS_ZERO, GAUSS_ONE)


def as_sqrt2(x) -> SqrtTwoGauss:
    if isinstance(x, SqrtTwoGauss):
        return x
    return SqrtTwoGauss(as_gauss(x))


class _RationalField:
    """Ring tag for Q with Fraction elements."""

    name = "Q"
    is_field = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, GaussRational):
            if x.im != 0:
                raise ScalarError(f"{x} has nonzero imaginary part")
            return x.re
        return _as_fraction(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def conjugate(self, x):
        return x

    def invert(self, x):
        if x == 0:
            raise ScalarError("division by zero in Q")
        return 1 / Fraction(x)


class _GaussField:
    """Ring tag for Q(i) with GaussRational elements."""

    name = "Qi"
    is_field = True

    def zero(self):
        return GAUSS_ZERO

    def one(self):
        return GAUSS_ONE

    def coerce(self, x):
        return as_gauss(x)

    def is_zero(self, x) -> bool:
        return as_gauss(x).is_zero()

    def conjugate(self, x):
        return as_gauss(x).conjugate()

    def invert(self, x):
        return as_gauss(x).inverse()


class _PolyRing:
    """Ring tag for the polynomial ring over Q(i); not a field."""

    name = "Poly"
    is_field = False

    def zero(self):
        return Poly.zero()

    def one(self):
        return Poly.one()

    def coerce(self, x):
        return as_poly(x)

    def is_zero(self, x) -> bool:
        return as_poly(x).is_zero()

    def conjugate(self, x):
        return as_poly(x).conjugate()

    def invert(self, x):
        c = as_poly(x).constant_value()
        return Poly.constant(c.inverse())


class _SqrtTwoGaussField:
    """Ring tag for Q(i, sqrt2) with SqrtTwoGauss elements."""

    name = "Qi_sqrt2"
    is_field = True

    def zero(self):
        return SqrtTwoGauss()

    def one(self):
        return SqrtTwoGauss(GAUSS_ONE)

    def coerce(self, x):
        return as_sqrt2(x)

    def is_zero(self, x) -> bool:
        return as_sqrt2(x).is_zero()

    def conjugate(self, x):
        return as_sqrt2(x).conjugate()

    def invert(self, x):
        return as_sqrt2(x).inverse()


QQ = _RationalField()
QI = _GaussField()
QPOLY = _PolyRing()
QISQRT2 = _SqrtTwoGaussField()

_RINGS = {"Q": QQ, "Qi": QI, "Poly": QPOLY, "Qi_sqrt2": QISQRT2}


def ring_by_name(name: str):
    try:
        return _RINGS[name]
    except KeyError:
        raise ScalarError(f"unknown scalar ring {name!r}") from None
