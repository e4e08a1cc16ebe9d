"""Exact coefficient arithmetic over Q(parameters).

Three layers:

* ``Fraction`` (stdlib) is the rational base field.
* :class:`Polynomial` is a sparse multivariate polynomial with rational
  coefficients.  A monomial is a tuple of ``(name, exponent)`` pairs sorted by
  name, with every exponent positive, so polynomials over different parameter
  sets mix freely.
* :class:`Scalar` is a reduced quotient of two polynomials.  The canonical form
  has ``gcd(num, den) = 1`` and a monic denominator under the graded
  lexicographic order (variables ordered by name), which makes structural
  equality coincide with equality in the fraction field.

The multivariate gcd is a recursive subresultant PRS with content/primitive
part splitting.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

from .errors import DivisionByZero, MissingAssignment, PoleAtPoint

Monomial = Tuple[Tuple[str, int], ...]

_ONE_MONO: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        a, b = m1[i], m2[j]
        if a[0] == b[0]:
            out.append((a[0], a[1] + b[1]))
            i += 1
            j += 1
        elif a[0] < b[0]:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_div(m1: Monomial, m2: Monomial):
    """Return m1 / m2, or None when m2 does not divide m1."""
    if not m2:
        return m1
    d = dict(m1)
    for name, e in m2:
        have = d.get(name, 0)
        if have < e:
            return None
        if have == e:
            del d[name]
        else:
            d[name] = have - e
    return tuple(sorted(d.items()))


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def _cmp_grlex(m1: Monomial, m2: Monomial) -> int:
    d1, d2 = _mono_deg(m1), _mono_deg(m2)
    if d1 != d2:
        return 1 if d1 > d2 else -1
    for (n1, e1), (n2, e2) in zip(m1, m2):
        if n1 != n2:
            # the monomial carrying the earlier variable is larger
            return 1 if n1 < n2 else -1
        if e1 != e2:
            return 1 if e1 > e2 else -1
    if len(m1) != len(m2):
        return 1 if len(m1) > len(m2) else -1
    return 0


grlex_key = cmp_to_key(_cmp_grlex)


def _coerce_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not a rational number: {c!r}")


class Polynomial:
    """Sparse multivariate polynomial over Q.  Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: Dict[Monomial, Fraction] = (
            {m: c for m, c in terms.items() if c} if terms else {}
        )
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: no zero coefficients present
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = _coerce_rational(c)
        return cls._raw({_ONE_MONO: c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls._raw({((name, 1),): Fraction(1)})

    # -- inspection -------------------------------------------------------
    @property
    def variables(self) -> Tuple[str, ...]:
        names = {n for m in self.terms for n, _ in m}
        return tuple(sorted(names))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        return self.terms.get(_ONE_MONO, Fraction(0))

    def total_degree(self) -> int:
        return max((_mono_deg(m) for m in self.terms), default=-1)

    def leading_monomial(self) -> Monomial:
        if len(self.terms) == 1:
            return next(iter(self.terms))
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()] if self.terms else Fraction(0)

    def sorted_terms(self):
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        return max(dict(m).get(name, 0) for m in self.terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms or not other.terms:
            return ZERO_POLY
        if len(other.terms) == 1:
            (m2, c2), = other.terms.items()
            if not m2:
                return self.scale(c2)
            return Polynomial._raw({_mono_mul(m, m2): c * c2 for m, c in self.terms.items()})
        if len(self.terms) == 1:
            return other * self
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    def scale(self, c) -> "Polynomial":
        c = _coerce_rational(c)
        if not c:
            return ZERO_POLY
        if c == 1:
            return self
        return Polynomial._raw({m: v * c for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result = ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, mono: Monomial, c=Fraction(1)) -> "Polynomial":
        return Polynomial._raw({_mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in m:
                try:
                    x = assignment[name]
                except KeyError:
                    raise MissingAssignment(name) from None
                v *= Fraction(x) ** e
            total += v
        return total

    # -- division -----------------------------------------------------------
    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / other``; raises ArithmeticError if inexact."""
        if not other.terms:
            raise DivisionByZero("polynomial division by zero")
        if len(other.terms) == 1:
            (m2, c2), = other.terms.items()
            out = {}
            for m, c in self.terms.items():
                q = _mono_div(m, m2)
                if q is None:
                    raise ArithmeticError("inexact polynomial division")
                out[q] = c / c2
            return Polynomial._raw(out)
        lm = other.leading_monomial()
        lc = other.terms[lm]
        rem = dict(self.terms)
        quot: Dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem, key=grlex_key)
            q = _mono_div(m, lm)
            if q is None:
                raise ArithmeticError("inexact polynomial division")
            c = rem[m] / lc
            quot[q] = c
            for m2, c2 in other.terms.items():
                mm = _mono_mul(q, m2)
                v = rem.get(mm, 0) - c * c2
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Polynomial._raw(quot)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            key = tuple(sorted((mapping.get(n, n), e) for n, e in m))
            out[key] = out.get(key, Fraction(0)) + c
        return Polynomial(out)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())


ZERO_POLY = Polynomial._raw({})
ONE_POLY = Polynomial._raw({_ONE_MONO: Fraction(1)})


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = str(a)
        else:
            factors = [n if e == 1 else f"{n}^{e}" for n, e in m]
            body = "*".join(factors)
            if a != 1:
                body = f"{a}*{body}"
        if idx == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# -- multivariate gcd -------------------------------------------------------


def _split(p: Polynomial, x: str) -> Dict[int, Polynomial]:
    """Coefficients of p viewed as a polynomial in x."""
    buckets: Dict[int, Dict[Monomial, Fraction]] = {}
    for m, c in p.terms.items():
        e = 0
        rest = m
        for k, (n, ee) in enumerate(m):
            if n == x:
                e = ee
                rest = m[:k] + m[k + 1:]
                break
        buckets.setdefault(e, {})[rest] = c
    return {e: Polynomial._raw(t) for e, t in buckets.items()}


def _lc_in(p: Polynomial, x: str) -> Tuple[int, Polynomial]:
    parts = _split(p, x)
    d = max(parts)
    return d, parts[d]


def _x_pow(x: str, k: int) -> Monomial:
    return ((x, k),) if k else _ONE_MONO


def _prem(a: Polynomial, b: Polynomial, x: str) -> Polynomial:
    """Pseudo-remainder of a by b with respect to x."""
    db, lcb = _lc_in(b, x)
    da = a.degree_in(x)
    e = da - db + 1
    r = a
    while r.terms:
        dr, lcr = _lc_in(r, x)
        if dr < db:
            break
        r = lcb * r - (lcr * b).mul_monomial(_x_pow(x, dr - db))
        e -= 1
    if e > 0:
        r = (lcb ** e) * r
    return r


def _content(p: Polynomial, x: str) -> Polynomial:
    g = ZERO_POLY
    for coeff in _split(p, x).values():
        g = poly_gcd(g, coeff)
        if g.is_constant():
            return ONE_POLY
    return g


def _monomial_gcd(p: Polynomial, mono_poly: Polynomial) -> Polynomial:
    (mono, _), = mono_poly.terms.items()
    mins = dict(mono)
    for m in p.terms:
        md = dict(m)
        for name in list(mins):
            v = min(mins[name], md.get(name, 0))
            if v:
                mins[name] = v
            else:
                del mins[name]
        if not mins:
            return ONE_POLY
    return Polynomial._raw({tuple(sorted(mins.items())): Fraction(1)})


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor of two polynomials over Q."""
    if not f.terms:
        return g.monic()
    if not g.terms:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return ONE_POLY
    if g.is_monomial():
        return _monomial_gcd(f, g)
    if f.is_monomial():
        return _monomial_gcd(g, f)
    vf, vg = set(f.variables), set(g.variables)
    only_f = sorted(vf - vg)
    if only_f:
        return poly_gcd(_content(f, only_f[0]), g)
    only_g = sorted(vg - vf)
    if only_g:
        return poly_gcd(f, _content(g, only_g[0]))
    x = min(vf)
    cf, cg = _content(f, x), _content(g, x)
    c = poly_gcd(cf, cg)
    pf, pg = f.exquo(cf), g.exquo(cg)
    if pf.degree_in(x) < pg.degree_in(x):
        pf, pg = pg, pf
    h = _subresultant_pp(pf, pg, x)
    return (c * h).monic()


def _subresultant_pp(a: Polynomial, b: Polynomial, x: str) -> Polynomial:
    """Primitive part (in x) of gcd(a, b) for a, b primitive in x, deg a >= deg b."""
    g = ONE_POLY
    h = ONE_POLY
    while True:
        delta = a.degree_in(x) - b.degree_in(x)
        r = _prem(a, b, x)
        if not r.terms:
            return b.exquo(_content(b, x))
        if r.degree_in(x) == 0:
            return ONE_POLY
        a, b = b, r.exquo(g * h ** delta)
        _, g = _lc_in(a, x)
        if delta:
            h = (g ** delta).exquo(h ** (delta - 1))


# -- the fraction field -----------------------------------------------------


class Scalar:
    """Canonical element of Q(parameters): ``num / den``.  Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = ONE_POLY
        if not den.terms:
            raise DivisionByZero("zero denominator")
        num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        s = object.__new__(cls)
        s.num = num
        s.den = den
        s._hash = None
        return s

    @classmethod
    def from_rational(cls, c) -> "Scalar":
        c = _coerce_rational(c)
        if not c:
            return ZERO
        return cls._raw(Polynomial._raw({_ONE_MONO: c}), ONE_POLY)

    @classmethod
    def variable(cls, name: str) -> "Scalar":
        return cls._raw(Polynomial.variable(name), ONE_POLY)

    @classmethod
    def coerce(cls, v) -> "Scalar":
        if isinstance(v, Scalar):
            return v
        if isinstance(v, Polynomial):
            return cls._raw(v, ONE_POLY)
        return cls.from_rational(v)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def is_one(self) -> bool:
        return self.den.is_constant() and self.num == ONE_POLY

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("scalar is not constant")
        return self.num.constant_value() / self.den.constant_value()

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.num.variables) | set(self.den.variables)))

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        if not self.num.terms:
            return self
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return ZERO
        if self.den.is_constant() and other.den.is_constant():
            # both polynomial (canonical constant denominators are 1)
            return Scalar._raw(self.num * other.num, ONE_POLY)
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            raise DivisionByZero("division by the zero scalar")
        if not self.num.terms:
            return ZERO
        return _make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if n == 0:
            return ONE
        return Scalar._raw(self.num ** n, self.den ** n)

    def inverse(self) -> "Scalar":
        return ONE / self

    # -- comparison / hashing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num.terms == other.num.terms and self.den.terms == other.den.terms
        if isinstance(other, (int, Fraction)):
            return self == Scalar.from_rational(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                # agree with hash(int) / hash(Fraction) for constants
                self._hash = hash(self.num.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num.terms)

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return evaluate(self, assignment)

    def rename(self, mapping: Mapping[str, str]) -> "Scalar":
        """Substitute parameter names; the mapping must be injective."""
        if not mapping or not set(mapping) & set(self.variables):
            return self
        return Scalar(self.num.rename(mapping), self.den.rename(mapping))


def _as_scalar(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, (int, Fraction)):
        return Scalar.from_rational(v)
    return NotImplemented


def _canonical(num: Polynomial, den: Polynomial):
    if not num.terms:
        return ZERO_POLY, ONE_POLY
    if den.is_constant():
        c = den.constant_value()
        return (num.scale(1 / c) if c != 1 else num), ONE_POLY
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.exquo(g)
        den = den.exquo(g)
    lc = den.leading_coefficient()
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    if den.is_constant():
        den = ONE_POLY
    return num, den


def _make(num: Polynomial, den: Polynomial) -> Scalar:
    n, d = _canonical(num, den)
    return Scalar._raw(n, d)


def normalize(s: Scalar) -> Scalar:
    """Recompute the canonical form (idempotent on canonical input)."""
    return _make(s.num, s.den)


ZERO = Scalar._raw(ZERO_POLY, ONE_POLY)
ONE = Scalar._raw(ONE_POLY, ONE_POLY)


def scalar_arith(op: str, a: Scalar, b) -> Scalar:
    """Dispatch one of add, sub, mul, div, neg, pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def is_zero(a: Scalar) -> bool:
    return a.is_zero()


def evaluate(a: Scalar, assignment: Mapping[str, object]) -> Fraction:
    """Exact value of ``a`` at a point; raises PoleAtPoint / MissingAssignment."""
    assignment = {k: Fraction(v) for k, v in assignment.items()}
    den = a.den.evaluate(assignment)
    if not den:
        raise PoleAtPoint(f"denominator {format_polynomial(a.den)} vanishes")
    return a.num.evaluate(assignment) / den


def format_scalar(s: Scalar) -> str:
    num = format_polynomial(s.num)
    if s.den.is_constant():
        return num
    if len(s.num.terms) > 1 or s.num.leading_coefficient().denominator != 1:
        num = f"({num})"
    den = format_polynomial(s.den)
    dm = s.den.leading_monomial()
    if not (len(s.den.terms) == 1 and len(dm) == 1):
        den = f"({den})"
    return f"{num}/{den}"


def var(name: str) -> Scalar:
    return Scalar.variable(name)


def const(c) -> Scalar:
    return Scalar.from_rational(c)


def sum_scalars(items: Iterable[Scalar]) -> Scalar:
    total = ZERO
    for s in items:
        total = total + s
    return total
