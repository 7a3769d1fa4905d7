"""Exact arithmetic in the field Q(q) of rational functions.

A RationalFunction is stored as a coprime pair of integer polynomials (N, D)
whose combined integer content is 1 and where D has a positive leading
coefficient. That pair is unique, so equality and hashing are structural. The
public `num`/`den` views rescale to the monic-denominator form with rational
coefficients.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from numbers import Rational
from typing import Iterable, Union

from . import _zpoly as zp
from .errors import (
    DegreeLimitExceeded,
    NotASquare,
    PoleAtPoint,
    ZeroDenominator,
)

MAX_DEGREE = int(os.environ.get("LEONARD_MAX_DEGREE", "4096"))

Scalar = Union[int, Fraction, "RationalFunction"]


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_frac(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s))


class Poly:
    """Polynomial in q with rational coefficients, ascending powers.

    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def _from_z(cls, f: zp.ZPoly, scale: Fraction = Fraction(1)) -> Poly:
        p = cls.__new__(cls)
        p.coeffs = tuple(scale * v for v in f)
        return p

    def _to_z(self) -> tuple[zp.ZPoly, int]:
        """Integer polynomial g and integer m with self == g / m."""
        m = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        return tuple(int(c * m) for c in self.coeffs), m

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for v in reversed(self.coeffs):
            acc = acc * x + v
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self) -> Poly:
        return Poly(-x for x in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __repr__(self) -> str:
        return f"Poly({[_frac_str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return _poly_str(self.coeffs)


def _poly_str(coeffs) -> str:
    if not coeffs:
        return "0"
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = _frac_str(mag)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if mag == 1 else f"{_frac_str(mag)}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class RationalFunction:
    """Element of Q(q). Immutable; arithmetic accepts ints and Fractions."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num: Union[Poly, Scalar] = 0, den: Union[Poly, Scalar] = 1):
        f = normalize(num, den)
        self._n, self._d, self._hash = f._n, f._d, None

    @classmethod
    def _raw(cls, n: zp.ZPoly, d: zp.ZPoly) -> RationalFunction:
        f = object.__new__(cls)
        f._n = n
        f._d = d
        f._hash = None
        return f

    @classmethod
    def _reduce(cls, n: zp.ZPoly, d: zp.ZPoly) -> RationalFunction:
        """Canonicalize an integer pair (d nonzero)."""
        if not n:
            return ZERO
        if len(d) > 1:
            g = zp.poly_gcd(n, d)
            if len(g) > 1:
                n = zp.divexact(n, g)
                d = zp.divexact(d, g)
        return cls._fix_content(n, d)

    @classmethod
    def _fix_content(cls, n: zp.ZPoly, d: zp.ZPoly) -> RationalFunction:
        if len(n) > MAX_DEGREE + 1 or len(d) > MAX_DEGREE + 1:
            raise DegreeLimitExceeded(
                f"intermediate degree exceeds LEONARD_MAX_DEGREE={MAX_DEGREE}")
        c = gcd(zp.content(n), zp.content(d))
        if d[-1] < 0:
            c = -c
        if c != 1:
            n = tuple(v // c for v in n)
            d = tuple(v // c for v in d)
        return cls._raw(n, d)

    @classmethod
    def coerce(cls, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, int):
            return cls._raw((x,) if x else (), (1,))
        if isinstance(x, Rational):
            x = Fraction(x)
            return cls._raw((x.numerator,) if x else (), (x.denominator,))
        if isinstance(x, Poly):
            return normalize(x, Poly([1]))
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # views

    @property
    def num(self) -> Poly:
        return Poly._from_z(self._n, Fraction(1, self._d[-1]))

    @property
    def den(self) -> Poly:
        return Poly._from_z(self._d, Fraction(1, self._d[-1]))

    def is_zero(self) -> bool:
        return not self._n

    def is_constant(self) -> bool:
        return len(self._n) <= 1 and len(self._d) == 1

    def is_monomial(self) -> bool:
        """True for c*q**k with c a nonzero rational and k any integer."""
        if not self._n:
            return False
        return (zp.valuation(self._n) == len(self._n) - 1
                and zp.valuation(self._d) == len(self._d) - 1)

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self._n[0], self._d[0]) if self._n else Fraction(0)

    def laurent_coeffs(self) -> dict[int, Fraction] | None:
        """{exponent: coefficient} when the denominator is a monomial."""
        if zp.valuation(self._d) != len(self._d) - 1:
            return None
        k = len(self._d) - 1
        lc = self._d[-1]
        return {e - k: Fraction(v, lc) for e, v in enumerate(self._n) if v}

    # arithmetic

    def __add__(self, other) -> RationalFunction:
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if not n1:
            return other
        if not n2:
            return self
        if d1 == d2:
            n = zp.add(n1, n2)
            if len(d1) == 1:
                return RationalFunction._fix_content(n, d1) if n else ZERO
            return RationalFunction._reduce(n, d1)
        if len(d1) == 1 and len(d2) == 1:
            n = zp.add(zp.scale(n1, d2[0]), zp.scale(n2, d1[0]))
            if not n:
                return ZERO
            return RationalFunction._fix_content(n, (d1[0] * d2[0],))
        g = zp.poly_gcd(d1, d2)
        if len(g) == 1:
            n = zp.add(zp.mul(n1, d2), zp.mul(n2, d1))
            if not n:
                return ZERO
            return RationalFunction._fix_content(n, zp.mul(d1, d2))
        e1 = zp.divexact(d1, g)
        e2 = zp.divexact(d2, g)
        # g is primitive, d1 = g*e1 and d2 = g*e2 up to units absorbed in e1, e2
        n = zp.add(zp.mul(n1, e2), zp.mul(n2, e1))
        if not n:
            return ZERO
        h = zp.poly_gcd(n, g)
        if len(h) > 1:
            n = zp.divexact(n, h)
            g = zp.divexact(g, h)
        return RationalFunction._fix_content(n, zp.mul(zp.mul(g, e1), e2))

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction._raw(zp.neg(self._n), self._d)

    def __pos__(self) -> RationalFunction:
        return self

    def __sub__(self, other) -> RationalFunction:
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) + (-self)

    def __mul__(self, other) -> RationalFunction:
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if not n1 or not n2:
            return ZERO
        if len(d2) > 1:
            g = zp.poly_gcd(n1, d2)
            if len(g) > 1:
                n1 = zp.divexact(n1, g)
                d2 = zp.divexact(d2, g)
        if len(d1) > 1:
            g = zp.poly_gcd(n2, d1)
            if len(g) > 1:
                n2 = zp.divexact(n2, g)
                d1 = zp.divexact(d1, g)
        return RationalFunction._fix_content(zp.mul(n1, n2), zp.mul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self._n:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        n, d = self._d, self._n
        if d[-1] < 0:
            n, d = zp.neg(n), zp.neg(d)
        return RationalFunction._raw(n, d)

    def __truediv__(self, other) -> RationalFunction:
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> RationalFunction:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return bool(self._n)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Rational)):
            return self == RationalFunction.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        lc = self._d[-1]
        num = [Fraction(v, lc) for v in self._n]
        den = [Fraction(v, lc) for v in self._d]
        if len(den) == 1:
            return _poly_str(num)
        ns = _poly_str(num)
        if sum(1 for v in num if v) > 1:
            ns = f"({ns})"
        ds = _poly_str(den)
        if sum(1 for v in den if v) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def to_json(self) -> dict:
        return {"num": [_frac_str(c) for c in self.num.coeffs],
                "den": [_frac_str(c) for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, obj) -> RationalFunction:
        if isinstance(obj, (int, str)):
            return cls.coerce(_parse_frac(obj))
        return normalize(Poly(_parse_frac(c) for c in obj["num"]),
                         Poly(_parse_frac(c) for c in obj["den"]))


ZERO = RationalFunction._raw((), (1,))
ONE = RationalFunction._raw((1,), (1,))
Q = RationalFunction._raw((0, 1), (1,))


def rf(x) -> RationalFunction:
    """Coerce an int, Fraction, Poly or RationalFunction into Q(q)."""
    return RationalFunction.coerce(x)


def qpow(k: int) -> RationalFunction:
    """q**k for any integer k."""
    if k >= 0:
        return RationalFunction._raw((0,) * k + (1,), (1,))
    return RationalFunction._raw((1,), (0,) * (-k) + (1,))


def normalize(num, den=1) -> RationalFunction:
    """Canonical form of num/den; num and den may be Poly, int or Fraction."""
    if isinstance(num, RationalFunction) or isinstance(den, RationalFunction):
        return rf(num) / rf(den)
    if not isinstance(num, Poly):
        num = Poly([num])
    if not isinstance(den, Poly):
        den = Poly([den])
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    n, mn = num._to_z()
    d, md = den._to_z()
    # num/den = (n/mn)/(d/md) = (n*md)/(d*mn)
    return RationalFunction._reduce(zp.scale(n, md), zp.scale(d, mn))


def add(f, g) -> RationalFunction:
    return rf(f) + rf(g)


def sub(f, g) -> RationalFunction:
    return rf(f) - rf(g)


def mul(f, g) -> RationalFunction:
    return rf(f) * rf(g)


def div(f, g) -> RationalFunction:
    return rf(f) / rf(g)


def invert_q(f) -> RationalFunction:
    """f(1/q) as an element of Q(q)."""
    f = rf(f)
    if not f._n:
        return f
    n, d = f._n, f._d
    dn, dd = len(n) - 1, len(d) - 1
    rn, rd = zp.reverse(n), zp.reverse(d)
    # f(1/q) = rev(n) q^-dn / (rev(d) q^-dd)
    if dd >= dn:
        rn = zp.shift(rn, dd - dn)
    else:
        rd = zp.shift(rd, dn - dd)
    return RationalFunction._reduce(rn, rd)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def _squarefree_decomposition(f: zp.ZPoly) -> list[zp.ZPoly]:
    """Yun's algorithm on a primitive polynomial: [s1, s2, ...] with
    f = const * s1 * s2**2 * s3**3 * ...

    Every gcd is primitive, so all quotients below are exact over Z.
    """
    out: list[zp.ZPoly] = []
    fp = zp.derivative(f)
    if not fp:
        return out
    c = zp.poly_gcd(f, fp)
    w = zp.divexact(f, c)
    y = zp.divexact(fp, c)
    z = zp.sub(y, zp.derivative(w))
    while len(w) > 1:
        g = zp.poly_gcd(w, z) if z else zp.primitive(w)
        out.append(g)
        w = zp.divexact(w, g)
        y = zp.divexact(z, g)
        z = zp.sub(y, zp.derivative(w))
    return out


def _poly_sqrt(f: zp.ZPoly) -> zp.ZPoly | None:
    """h with h*h == f for primitive f with positive lc, else None."""
    if len(f) == 1:
        return (1,) if f[0] == 1 else None
    parts = _squarefree_decomposition(f)
    h: zp.ZPoly = (1,)
    for mult, s in enumerate(parts, 1):
        if len(s) <= 1:
            continue
        if mult % 2:
            return None
        for _ in range(mult // 2):
            h = zp.mul(h, s)
    h = zp.primitive(h)
    return h if zp.mul(h, h) == f else None


def sqrt_exact(f) -> RationalFunction:
    """g with g*g == f and positive leading numerator coefficient.

    Raises NotASquare when f has no square root in Q(q).
    """
    f = rf(f)
    if not f._n:
        return ZERO
    n, d = f._n, f._d
    cn, cd = zp.content(n), zp.content(d)
    if n[-1] < 0:
        cn = -cn
    pn = zp.divexact_int(n, cn)
    pd = zp.divexact_int(d, cd)
    lead = _rational_sqrt(Fraction(cn, cd))
    if lead is None:
        raise NotASquare(f"{f} is not a square in Q(q)")
    hn = _poly_sqrt(pn)
    hd = _poly_sqrt(pd) if hn is not None else None
    if hn is None or hd is None:
        raise NotASquare(f"{f} is not a square in Q(q)")
    return RationalFunction._fix_content(zp.scale(hn, lead.numerator),
                                         zp.scale(hd, lead.denominator))


def is_square(f) -> bool:
    try:
        sqrt_exact(f)
    except NotASquare:
        return False
    return True


def eval_at(f, q0) -> Fraction:
    """Exact value of f at the rational point q0."""
    f = rf(f)
    q0 = Fraction(q0)
    den = _eval_frac(f._d, q0)
    if not den:
        raise PoleAtPoint(f"{f} has a pole at q = {q0}")
    return _eval_frac(f._n, q0) / den


def _eval_frac(c: zp.ZPoly, x: Fraction) -> Fraction:
    if not c:
        return Fraction(0)
    # homogenized Horner: sum c_k p^k s^(n-k), divided by s^n
    p, s = x.numerator, x.denominator
    acc = 0
    spow = 1
    for v in reversed(c):
        acc = acc * p + v * spow
        spow *= s
    return Fraction(acc, s ** (len(c) - 1))


class QuadExtElement:
    """base + radical_coeff * sqrt(discriminant), discriminant a non-square."""

    __slots__ = ("base", "radical_coeff", "discriminant")

    def __init__(self, base, radical_coeff, discriminant, *, check: bool = True):
        self.base = rf(base)
        self.radical_coeff = rf(radical_coeff)
        self.discriminant = rf(discriminant)
        if check and is_square(self.discriminant):
            raise ValueError("discriminant is a square in Q(q); use RationalFunction")

    def _lift(self, other) -> QuadExtElement:
        if isinstance(other, QuadExtElement):
            if other.discriminant != self.discriminant:
                raise ValueError("mixing different quadratic extensions")
            return other
        return QuadExtElement(rf(other), ZERO, self.discriminant, check=False)

    def _new(self, a, b) -> QuadExtElement:
        return QuadExtElement(a, b, self.discriminant, check=False)

    def __add__(self, other):
        o = self._lift(other)
        return self._new(self.base + o.base, self.radical_coeff + o.radical_coeff)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.base, -self.radical_coeff)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        a, b, c, e = self.base, self.radical_coeff, o.base, o.radical_coeff
        return self._new(a * c + b * e * self.discriminant, a * e + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExtElement:
        return self._new(self.base, -self.radical_coeff)

    def norm(self) -> RationalFunction:
        return self.base * self.base - self.radical_coeff * self.radical_coeff * self.discriminant

    def inverse(self) -> QuadExtElement:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        c = self.conjugate()
        return self._new(c.base / n, c.radical_coeff / n)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __bool__(self) -> bool:
        return bool(self.base) or bool(self.radical_coeff)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExtElement) and other.discriminant != self.discriminant:
            return False
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.base == o.base and self.radical_coeff == o.radical_coeff

    def __hash__(self) -> int:
        if not self.radical_coeff:
            return hash(self.base)
        return hash((self.base, self.radical_coeff, self.discriminant))

    def __repr__(self) -> str:
        return f"QuadExtElement({self.base}, {self.radical_coeff}, sqrt({self.discriminant}))"

    def __str__(self) -> str:
        return f"{self.base} + ({self.radical_coeff})*sqrt({self.discriminant})"

    def to_json(self) -> dict:
        return {"base": self.base.to_json(),
                "radical_coeff": self.radical_coeff.to_json(),
                "discriminant": self.discriminant.to_json()}

    @classmethod
    def from_json(cls, obj) -> QuadExtElement:
        return cls(RationalFunction.from_json(obj["base"]),
                   RationalFunction.from_json(obj["radical_coeff"]),
                   RationalFunction.from_json(obj["discriminant"]))


def element_to_json(x):
    return x.to_json() if isinstance(x, (RationalFunction, QuadExtElement)) else rf(x).to_json()


def element_from_json(obj):
    if isinstance(obj, dict) and "discriminant" in obj:
        return QuadExtElement.from_json(obj)
    return RationalFunction.from_json(obj)
