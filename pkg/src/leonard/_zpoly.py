"""Dense univariate polynomials over the integers.

Polynomials are tuples of Python ints in ascending order of degree, with no
trailing zeros; the zero polynomial is the empty tuple. Everything here is a
plain function on tuples so that the rational-function layer above can stay
allocation-light.
"""

from __future__ import annotations

from math import gcd, isqrt

ZPoly = tuple[int, ...]

ZERO: ZPoly = ()
ONE: ZPoly = (1,)


def strip(c) -> ZPoly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def degree(f: ZPoly) -> int:
    return len(f) - 1


def valuation(f: ZPoly) -> int:
    """Multiplicity of q as a factor of f (f nonzero)."""
    for k, v in enumerate(f):
        if v:
            return k
    raise ValueError("valuation of zero polynomial")


def add(f: ZPoly, g: ZPoly) -> ZPoly:
    if len(f) < len(g):
        f, g = g, f
    if not g:
        return f
    out = list(f)
    for k, v in enumerate(g):
        out[k] += v
    if len(f) == len(g):
        return strip(out)
    return tuple(out)


def neg(f: ZPoly) -> ZPoly:
    return tuple(-v for v in f)


def sub(f: ZPoly, g: ZPoly) -> ZPoly:
    if not g:
        return f
    out = list(f) + [0] * (len(g) - len(f))
    for k, v in enumerate(g):
        out[k] -= v
    return strip(out)


def scale(f: ZPoly, c: int) -> ZPoly:
    if not c:
        return ZERO
    if c == 1:
        return f
    return tuple(c * v for v in f)


def shift(f: ZPoly, k: int) -> ZPoly:
    """Multiply by q**k (k >= 0)."""
    if not f or not k:
        return f
    return (0,) * k + f


def mul(f: ZPoly, g: ZPoly) -> ZPoly:
    if not f or not g:
        return ZERO
    if len(f) == 1:
        return scale(g, f[0])
    if len(g) == 1:
        return scale(f, g[0])
    if len(f) < len(g):
        f, g = g, f
    if len(g) > 24:
        return _kronecker_mul(f, g)
    out = [0] * (len(f) + len(g) - 1)
    for j, b in enumerate(g):
        if b:
            for i, a in enumerate(f, j):
                out[i] += a * b
    return tuple(out)


def _pack(f: ZPoly, bits: int) -> int:
    n = 0
    for v in reversed(f):
        n = (n << bits) + v
    return n


def _unpack(n: int, bits: int, length: int) -> ZPoly:
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(length):
        v = n & mask
        n >>= bits
        if v >= half:
            v -= 1 << bits
            n += 1
        out.append(v)
    return strip(out)


def _kronecker_mul(f: ZPoly, g: ZPoly) -> ZPoly:
    # Evaluate at 2**bits, multiply as big integers, read digits back with signs.
    bound = max(abs(v) for v in f) * max(abs(v) for v in g) * min(len(f), len(g))
    bits = bound.bit_length() + 2
    n = _pack(f, bits) * _pack(g, bits)
    return _unpack(n, bits, len(f) + len(g) - 1)


def evaluate(f: ZPoly, x: int) -> int:
    acc = 0
    for v in reversed(f):
        acc = acc * x + v
    return acc


def content(f: ZPoly) -> int:
    g = 0
    for v in f:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def primitive(f: ZPoly) -> ZPoly:
    """Primitive part with positive leading coefficient."""
    if not f:
        return f
    c = content(f)
    if f[-1] < 0:
        c = -c
    if c == 1:
        return f
    return tuple(v // c for v in f)


def divexact_int(f: ZPoly, c: int) -> ZPoly:
    if c == 1:
        return f
    return tuple(v // c for v in f)


def divmod_exact(f: ZPoly, g: ZPoly) -> ZPoly | None:
    """Return h with f = g*h over the integers, or None if g does not divide f."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return ZERO
    dg = len(g) - 1
    df = len(f) - 1
    if df < dg:
        return None
    lc = g[-1]
    rem = list(f)
    quot = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        top = rem[k + dg]
        if top:
            t, r = divmod(top, lc)
            if r:
                return None
            quot[k] = t
            for j in range(dg + 1):
                rem[k + j] -= t * g[j]
    if any(rem[:dg]):
        return None
    return tuple(quot)


def divexact(f: ZPoly, g: ZPoly) -> ZPoly:
    h = divmod_exact(f, g)
    if h is None:
        raise ArithmeticError("inexact polynomial division")
    return h


def pseudo_rem(f: ZPoly, g: ZPoly) -> ZPoly:
    dg = len(g) - 1
    lc = g[-1]
    rem = list(f)
    while len(rem) - 1 >= dg and rem:
        top = rem[-1]
        k = len(rem) - 1 - dg
        rem = [lc * v for v in rem]
        for j in range(dg + 1):
            rem[k + j] -= top * g[j]
        rem = list(strip(rem))
    return tuple(rem)


def prs_gcd(f: ZPoly, g: ZPoly) -> ZPoly:
    """Primitive polynomial remainder sequence; result primitive, positive lc."""
    f, g = primitive(f), primitive(g)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = pseudo_rem(f, g)
        f, g = g, primitive(r)
    return primitive(f)


def _max_norm(f: ZPoly) -> int:
    return max(abs(v) for v in f)


def _interpolate(h: int, x: int) -> ZPoly:
    # Symmetric base-x digits of h.
    out = []
    half = x // 2
    while h:
        r = h % x
        if r > half:
            r -= x
        out.append(r)
        h = (h - r) // x
    return strip(out)


def heu_gcd(f: ZPoly, g: ZPoly) -> ZPoly | None:
    """Heuristic gcd by evaluation at a large integer; None when it gives up."""
    nf, ng = _max_norm(f), _max_norm(g)
    bound = 2 * min(nf, ng) + 29
    x = max(min(bound, 99 * isqrt(bound)),
            2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(6):
        ff = evaluate(f, x)
        gg = evaluate(g, x)
        if ff and gg:
            h = primitive(_interpolate(gcd(ff, gg), x))
            if h and divmod_exact(f, h) is not None and divmod_exact(g, h) is not None:
                return h
        x = x * 73794 * isqrt(isqrt(x)) // 27011
    return None


def poly_gcd(f: ZPoly, g: ZPoly) -> ZPoly:
    """Greatest common divisor over Q[q], as a primitive integer polynomial
    with positive leading coefficient. gcd(0, 0) is 0."""
    if not f:
        return primitive(g)
    if not g:
        return primitive(f)
    vf, vg = valuation(f), valuation(g)
    v = min(vf, vg)
    if vf:
        f = f[vf:]
    if vg:
        g = g[vg:]
    if len(f) == 1 or len(g) == 1:
        return shift(ONE, v)
    f, g = primitive(f), primitive(g)
    if f == g:
        return shift(f, v)
    h = heu_gcd(f, g)
    if h is None:
        h = prs_gcd(f, g)
    return shift(h, v)


def derivative(f: ZPoly) -> ZPoly:
    return strip([k * f[k] for k in range(1, len(f))])


def reverse(f: ZPoly) -> ZPoly:
    """q**deg(f) * f(1/q), after stripping any factor of q from f."""
    out = list(reversed(f))
    return strip(out)
