"""Eigenvalue sequences, recurrences, split sequences and parameter arrays."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import permutations
from typing import Sequence

from .errors import (
    MissingC,
    MissingXi,
    NoFit,
    NoNonzeroRoot,
    NotALeonardPair,
    NotRecurrent,
    SingularMatrix,
    Underdetermined,
    ZeroC,
)
from .exactmat import (
    FieldMatrix,
    conjugate,
    eigenvector,
    is_upper_bidiagonal,
    solve,
)
from .qfield import (
    ONE,
    ZERO,
    NotASquare,
    QuadExtElement,
    RationalFunction,
    invert_q,
    qpow,
    rf,
    sqrt_exact,
)

Seq = tuple[RationalFunction, ...]


def _seq(values) -> Seq:
    return tuple(rf(v) for v in values)


def qdiff(k: int) -> RationalFunction:
    """q**k - q**-k."""
    return qpow(k) - qpow(-k)


def beta_of_q() -> RationalFunction:
    return qpow(2) + qpow(-2)


@dataclass(frozen=True)
class ClosedFormParams:
    """(d, alpha, alpha*, a, a', b, b') together with xi and/or c.

    When both xi and c are given they must satisfy xi = -aa'c - bb'/c.
    """

    d: int
    a: RationalFunction
    a_prime: RationalFunction
    b: RationalFunction = ZERO
    b_prime: RationalFunction = ZERO
    c: RationalFunction | None = None
    xi: RationalFunction | None = None
    alpha: RationalFunction = ZERO
    alpha_star: RationalFunction = ZERO

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be at least 1")
        for name in ("a", "a_prime", "b", "b_prime", "alpha", "alpha_star"):
            object.__setattr__(self, name, rf(getattr(self, name)))
        if self.c is not None:
            object.__setattr__(self, "c", rf(self.c))
            if not self.c:
                raise ZeroC("c must be nonzero")
        if self.xi is not None:
            object.__setattr__(self, "xi", rf(self.xi))
            if self.c is not None and self.xi != xi_from_c(
                    self.a, self.a_prime, self.b, self.b_prime, self.c):
                raise ValueError("xi and c are inconsistent")

    def with_xi(self) -> ClosedFormParams:
        """Copy with xi filled in from c."""
        if self.xi is not None:
            return self
        if self.c is None:
            raise MissingC("need c to derive xi")
        return replace(self, xi=xi_from_c(self.a, self.a_prime, self.b, self.b_prime, self.c))

    def map(self, fn) -> ClosedFormParams:
        """Apply fn to every field element."""
        return ClosedFormParams(
            d=self.d, a=fn(self.a), a_prime=fn(self.a_prime), b=fn(self.b),
            b_prime=fn(self.b_prime),
            c=None if self.c is None else fn(self.c),
            xi=None if self.xi is None else fn(self.xi),
            alpha=fn(self.alpha), alpha_star=fn(self.alpha_star))

    def to_json(self) -> dict:
        def enc(x):
            return None if x is None else x.to_json()
        return {"d": self.d, "alpha": enc(self.alpha), "alpha_star": enc(self.alpha_star),
                "a": enc(self.a), "a_prime": enc(self.a_prime), "b": enc(self.b),
                "b_prime": enc(self.b_prime), "c": enc(self.c), "xi": enc(self.xi)}

    @classmethod
    def from_json(cls, obj) -> ClosedFormParams:
        def dec(key, default=None):
            v = obj.get(key)
            return default if v is None else RationalFunction.from_json(v)
        return cls(d=int(obj["d"]), a=dec("a", ZERO), a_prime=dec("a_prime", ZERO),
                   b=dec("b", ZERO), b_prime=dec("b_prime", ZERO), c=dec("c"),
                   xi=dec("xi"), alpha=dec("alpha", ZERO),
                   alpha_star=dec("alpha_star", ZERO))


@dataclass(frozen=True)
class ParameterArray:
    d: int
    theta: Seq
    theta_star: Seq
    varphi: Seq
    phi: Seq
    validated: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name in ("theta", "theta_star", "varphi", "phi"):
            object.__setattr__(self, name, _seq(getattr(self, name)))
        if len(self.theta) != self.d + 1 or len(self.theta_star) != self.d + 1:
            raise ValueError("eigenvalue sequences must have length d+1")
        if len(self.varphi) != self.d or len(self.phi) != self.d:
            raise ValueError("split sequences must have length d")

    def validate(self) -> ParameterArray:
        bad = check_parameter_array(self)
        if bad:
            from .errors import ConditionsViolated
            raise ConditionsViolated(bad)
        return replace(self, validated=True)

    def to_json(self) -> dict:
        return {"d": self.d,
                "theta": [x.to_json() for x in self.theta],
                "theta_star": [x.to_json() for x in self.theta_star],
                "varphi": [x.to_json() for x in self.varphi],
                "phi": [x.to_json() for x in self.phi]}

    @classmethod
    def from_json(cls, obj) -> ParameterArray:
        def dec(key):
            return [RationalFunction.from_json(x) for x in obj[key]]
        return cls(int(obj["d"]), dec("theta"), dec("theta_star"), dec("varphi"), dec("phi"))


@dataclass(frozen=True)
class Violation:
    condition: str
    index: int | tuple[int, ...] | None = None
    detail: str = ""

    def __str__(self) -> str:
        where = "" if self.index is None else f" at {self.index}"
        tail = f": {self.detail}" if self.detail else ""
        return f"{self.condition}{where}{tail}"

    def to_json(self) -> dict:
        idx = list(self.index) if isinstance(self.index, tuple) else self.index
        return {"condition": self.condition, "index": idx, "detail": self.detail}


# closed forms

def theta_closed_form(d: int, alpha, a, a_prime) -> Seq:
    """alpha + a q^(2i-d) + a' q^(d-2i) for 0 <= i <= d."""
    alpha, a, a_prime = rf(alpha), rf(a), rf(a_prime)
    return tuple(alpha + a * qpow(2 * i - d) + a_prime * qpow(d - 2 * i)
                 for i in range(d + 1))


def fit_theta_params(theta: Sequence) -> tuple[RationalFunction, RationalFunction, RationalFunction]:
    """(alpha, a, a') with theta_i = alpha + a q^(2i-d) + a' q^(d-2i) for all i."""
    theta = _seq(theta)
    d = len(theta) - 1
    if d < 2:
        raise ValueError("need at least three values to fit")
    system = FieldMatrix([[ONE, qpow(2 * i - d), qpow(d - 2 * i)] for i in range(3)])
    alpha, a, a_prime = solve(system, theta[:3])
    if theta_closed_form(d, alpha, a, a_prime) != theta:
        raise NoFit("sequence is not of the form alpha + a q^(2i-d) + a' q^(d-2i)")
    return alpha, a, a_prime


def recurrence_ratios(theta: Sequence) -> list[RationalFunction]:
    """(theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i) for 2 <= i <= d-1."""
    theta = _seq(theta)
    out = []
    for i in range(2, len(theta) - 1):
        den = theta[i - 1] - theta[i]
        if not den:
            raise NotRecurrent(f"theta_{i - 1} == theta_{i}")
        out.append((theta[i - 2] - theta[i + 1]) / den)
    return out


def fundamental_beta(theta: Sequence) -> RationalFunction:
    if len(theta) < 4:
        raise ValueError("beta needs d >= 3")
    ratios = recurrence_ratios(theta)
    if any(r != ratios[0] for r in ratios[1:]):
        raise NotRecurrent("recurrence ratio depends on i")
    return ratios[0] - 1


def gamma_rho(theta: Sequence, beta) -> tuple[RationalFunction, RationalFunction]:
    theta = _seq(theta)
    beta = rf(beta)
    d = len(theta) - 1
    gammas = [theta[i - 1] - beta * theta[i] + theta[i + 1] for i in range(1, d)]
    if not gammas or any(g != gammas[0] for g in gammas):
        raise NotRecurrent("gamma is not constant")
    gamma = gammas[0]
    rhos = [theta[i - 1] ** 2 - beta * theta[i - 1] * theta[i] + theta[i] ** 2
            - gamma * (theta[i - 1] + theta[i]) for i in range(1, d + 1)]
    if any(r != rhos[0] for r in rhos):
        raise NotRecurrent("rho is not constant")
    return gamma, rhos[0]


def extended_ends(theta: Sequence, beta, gamma) -> tuple[RationalFunction, RationalFunction]:
    """theta_{-1} and theta_{d+1}, chosen so the gamma recurrence holds at i = 0 and i = d."""
    theta = _seq(theta)
    beta, gamma = rf(beta), rf(gamma)
    return (gamma + beta * theta[0] - theta[1],
            gamma + beta * theta[-1] - theta[-2])


def standard_orderings(values: Sequence, beta=None) -> list[Seq]:
    """All orderings of `values` satisfying the beta-recurrence.

    Each ordering is determined by its first three terms and the fourth (which
    fixes beta). For d = 3 the recurrence is a single equation, so every
    ordering qualifies unless beta is pinned. Without beta, a set that is odd
    about its middle entry also admits orderings with beta replaced by -beta
    or +-1/beta.
    """
    vals = _seq(values)
    d = len(vals) - 1
    if d < 3:
        raise ValueError("orderings need d >= 3")
    if len(set(vals)) != len(vals):
        raise ValueError("values must be mutually distinct")
    pool = set(vals)
    target = None if beta is None else rf(beta) + 1
    found: list[Seq] = []
    for t0, t1, t2 in permutations(vals, 3):
        if t1 == t2:
            continue
        for t3 in pool - {t0, t1, t2}:
            b1 = (t0 - t3) / (t1 - t2)
            if target is not None and b1 != target:
                continue
            seq = [t0, t1, t2, t3]
            ok = True
            while len(seq) < d + 1:
                nxt = seq[-3] - b1 * seq[-2] + b1 * seq[-1]
                if nxt not in pool or nxt in seq:
                    ok = False
                    break
                seq.append(nxt)
            if ok:
                found.append(tuple(seq))
    return found


def vphi_phi_closed(cf: ClosedFormParams) -> tuple[Seq, Seq]:
    """Split sequences written through xi."""
    if cf.xi is None:
        raise MissingXi("xi is required")
    d, a, ap, b, bp, xi = cf.d, cf.a, cf.a_prime, cf.b, cf.b_prime, cf.xi
    varphi, phi = [], []
    for i in range(1, d + 1):
        f = qdiff(i) * (qpow(i - d - 1) - qpow(d - i + 1))
        lo, hi = qpow(2 * i - d - 1), qpow(d - 2 * i + 1)
        varphi.append(f * (xi + a * b * lo + ap * bp * hi))
        phi.append(f * (xi + ap * b * lo + a * bp * hi))
    return tuple(varphi), tuple(phi)


def vphi_phi_c_form(cf: ClosedFormParams) -> tuple[Seq, Seq]:
    """Split sequences in the factored form through c."""
    if cf.c is None:
        raise MissingC("c is required")
    d, a, ap, b, bp, c = cf.d, cf.a, cf.a_prime, cf.b, cf.b_prime, cf.c
    cinv = c.inverse()
    varphi, phi = [], []
    for i in range(1, d + 1):
        f = qdiff(i) * (qpow(d - i + 1) - qpow(i - d - 1)) * cinv
        hi, lo = c * qpow(d - 2 * i + 1), c * qpow(2 * i - d - 1)
        varphi.append(f * (b - ap * hi) * (bp - a * lo))
        phi.append(f * (b - a * hi) * (bp - ap * lo))
    return tuple(varphi), tuple(phi)


def check_parameter_array(p: ParameterArray) -> list[Violation]:
    """Every violated axiom of a parameter array; empty when valid."""
    d = p.d
    th, ths, vp, ph = p.theta, p.theta_star, p.varphi, p.phi
    out: list[Violation] = []
    for name, seq in (("theta", th), ("theta_star", ths)):
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                if seq[i] == seq[j]:
                    out.append(Violation("(i)", (i, j), f"{name}_{i} == {name}_{j}"))
    for i in range(1, d + 1):
        if not vp[i - 1]:
            out.append(Violation("(ii)", i, f"varphi_{i} == 0"))
        if not ph[i - 1]:
            out.append(Violation("(ii)", i, f"phi_{i} == 0"))
    span = th[0] - th[d]
    if span:
        acc = ZERO
        for i in range(1, d + 1):
            acc = acc + (th[i - 1] - th[d - i + 1]) / span
            if vp[i - 1] != ph[0] * acc + (ths[i] - ths[0]) * (th[i - 1] - th[d]):
                out.append(Violation("(iii)", i))
            if ph[i - 1] != vp[0] * acc + (ths[i] - ths[0]) * (th[d - i + 1] - th[0]):
                out.append(Violation("(iv)", i))
    if d >= 3:
        try:
            r1 = recurrence_ratios(th)
            r2 = recurrence_ratios(ths)
        except NotRecurrent as exc:
            out.append(Violation("(v)", None, str(exc)))
        else:
            base = r1[0]
            for k, (x, y) in enumerate(zip(r1, r2), start=2):
                if x != base or y != base:
                    out.append(Violation("(v)", k))
    return out


def xi_from_c(a, a_prime, b, b_prime, c) -> RationalFunction:
    c = rf(c)
    if not c:
        raise ZeroC("c must be nonzero")
    return -rf(a) * rf(a_prime) * c - rf(b) * rf(b_prime) / c


def c_from_xi(a, a_prime, b, b_prime, xi) -> list:
    """Nonzero roots c of aa' c^2 + xi c + bb' = 0.

    Roots outside Q(q) come back as QuadExtElement.
    """
    p2 = rf(a) * rf(a_prime)
    p1 = rf(xi)
    p0 = rf(b) * rf(b_prime)
    if not p2:
        if not p1:
            if not p0:
                raise Underdetermined("every nonzero c satisfies the equation")
            raise NoNonzeroRoot("no root: bb' != 0 while aa' = xi = 0")
        root = -p0 / p1
        if not root:
            raise NoNonzeroRoot("the only root is c = 0")
        return [root]
    if not p0:
        if not p1:
            raise NoNonzeroRoot("the only root is c = 0")
        return [-p1 / p2]
    disc = p1 * p1 - 4 * p2 * p0
    half = (2 * p2).inverse()
    try:
        s = sqrt_exact(disc)
    except NotASquare:
        return [QuadExtElement(-p1 * half, half, disc, check=False),
                QuadExtElement(-p1 * half, -half, disc, check=False)]
    roots = [(-p1 + s) * half, (-p1 - s) * half]
    return roots[:1] if not s else roots


def split_basis(cf: ClosedFormParams) -> FieldMatrix:
    """Columns u_0..u_d of the split basis of the constructed pair."""
    from .lbtd import check_conditions
    from .errors import ConditionsViolated

    if cf.c is None:
        raise MissingC("c is required")
    bad = check_conditions(cf)
    if bad:
        raise ConditionsViolated(bad)
    d, a, ap, bp, c = cf.d, cf.a, cf.a_prime, cf.b_prime, cf.c
    cols = []
    for r in range(d + 1):
        col = []
        for i in range(d + 1):
            e = (d + r - i) * (d - r + i - 1)
            val = (-ONE if (r + i) % 2 else ONE) * c ** (i - r) * qpow(e // 2)
            for h in range(d + r - i):
                val = val * qdiff(d - h)
            for h in range(r):
                val = val * (bp - a * c * qpow(2 * h - d + 1))
            for h in range(d - i):
                val = val * (bp - ap * c * qpow(2 * h - d + 1))
            col.append(val)
        cols.append(col)
    return FieldMatrix.from_columns(cols)


def _first_split(a: FieldMatrix, astar: FieldMatrix, theta: Seq, theta_star: Seq) -> Seq:
    d = a.n_rows - 1
    try:
        u = [eigenvector(astar, theta_star[0])]
    except Exception as exc:
        raise NotALeonardPair(f"theta*_0 is not a simple eigenvalue of A*: {exc}") from exc
    for r in range(d):
        u.append(a.shift(theta[r]).apply(u[-1]))
    if any(a.shift(theta[d]).apply(u[-1])):
        raise NotALeonardPair("(A - theta_d) u_d != 0")
    basis = FieldMatrix.from_columns(u)
    try:
        split = conjugate(astar, basis)
    except SingularMatrix as exc:
        raise NotALeonardPair("split vectors are linearly dependent") from exc
    if not is_upper_bidiagonal(split) or split.diagonal() != theta_star:
        raise NotALeonardPair("A* is not upper bidiagonal in the split basis")
    return split.diagonal(1)


def split_sequences_of(a: FieldMatrix, astar: FieldMatrix, theta: Sequence,
                       theta_star: Sequence) -> tuple[Seq, Seq]:
    """First and second split sequences computed from the matrices alone.

    u_0 spans the theta*_0 eigenspace of A* and u_{r+1} = (A - theta_r) u_r;
    these u_r lie in the required intersections of eigenspace sums, and the
    conjugation shape check certifies the result.
    """
    theta, theta_star = _seq(theta), _seq(theta_star)
    varphi = _first_split(a, astar, theta, theta_star)
    phi = _first_split(a, astar, theta[::-1], theta_star)
    return varphi, phi


def translate(a: FieldMatrix, astar: FieldMatrix, alpha, alpha_star) -> tuple[FieldMatrix, FieldMatrix]:
    return a.shift(-rf(alpha)), astar.shift(-rf(alpha_star))


def invert_q_seq(values: Sequence) -> Seq:
    return tuple(invert_q(v) for v in values)
