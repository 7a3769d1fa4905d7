"""LB-TD Leonard pairs: construction, certification and parameter recovery.

An LB-TD pair is (A, A*) with A lower bidiagonal (subdiagonal all 1) and A*
irreducible tridiagonal. Throughout, x_i, y_i, z_i denote the diagonal,
superdiagonal and subdiagonal of A*; y_i and z_i are 1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import (
    CaseHypothesisViolated,
    ConditionsViolated,
    DegenerateEigenvalue,
    DegenerateZ,
    EigenvalueMismatch,
    MissingC,
    NoFit,
    NotAnEigenvalue,
    NotALeonardPair,
    NotInFamily,
    ZeroC,
)
from .exactmat import (
    FieldMatrix,
    conjugate,
    conjugate_by_eigenbasis,
    eigenbasis_for,
    is_irreducible_tridiagonal,
    is_lbtd_pair,
)
from .params import (
    ClosedFormParams,
    ParameterArray,
    Seq,
    Violation,
    fit_theta_params,
    qdiff,
    theta_closed_form,
    vphi_phi_c_form,
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


@dataclass(frozen=True)
class LBTDPair:
    """A pair of (d+1)x(d+1) matrices meant to be LB-TD.

    The shape is not enforced here so that deliberately broken pairs can be
    fed to the verifiers; use is_lbtd_pair(pair.A, pair.Astar) to check it.
    """

    d: int
    A: FieldMatrix
    Astar: FieldMatrix
    provenance: ClosedFormParams | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.A.shape != (self.d + 1, self.d + 1) or self.Astar.shape != self.A.shape:
            raise ValueError("matrix sizes do not match d")

    @property
    def theta(self) -> Seq:
        return self.A.diagonal()

    @property
    def x(self) -> Seq:
        return self.Astar.diagonal()

    @property
    def y(self) -> Seq:
        return self.Astar.diagonal(1)

    @property
    def z(self) -> Seq:
        return self.Astar.diagonal(-1)

    def map(self, fn) -> LBTDPair:
        """Entrywise image, e.g. fn = invert_q. Provenance is dropped."""
        return LBTDPair(self.d, self.A.map(fn), self.Astar.map(fn))

    def to_json(self) -> dict:
        return {"d": self.d, "A": self.A.to_json(), "Astar": self.Astar.to_json(),
                "provenance": None if self.provenance is None else self.provenance.to_json()}

    @classmethod
    def from_json(cls, obj) -> LBTDPair:
        prov = obj.get("provenance")
        return cls(int(obj["d"]), FieldMatrix.from_json(obj["A"]),
                   FieldMatrix.from_json(obj["Astar"]),
                   None if prov is None else ClosedFormParams.from_json(prov))


# inequalities

def _qset(center: int, count: int) -> list[int]:
    """Exponents center, center-2, ..., count terms."""
    return [center - 2 * k for k in range(count)]


def check_conditions(cf: ClosedFormParams) -> list[Violation]:
    """Every failing membership among the three exclusion families."""
    if cf.c is None:
        raise MissingC("c is required")
    if not cf.c:
        raise ZeroC("c must be nonzero")
    d, a, ap, b, bp, c = cf.d, cf.a, cf.a_prime, cf.b, cf.b_prime, cf.c
    out = []
    for e in _qset(2 * d - 2, 2 * d - 1):
        if a == ap * qpow(e):
            out.append(Violation("cond1", e, f"a = a' q^{e}"))
    for e in _qset(2 * d - 2, 2 * d - 1):
        if b == bp * qpow(e):
            out.append(Violation("cond2", e, f"b = b' q^{e}"))
    bc, bpc = b / c, bp / c
    for e in _qset(d - 1, d):
        for lhs_name, lhs in (("b/c", bc), ("b'/c", bpc)):
            for rhs_name, rhs in (("a", a), ("a'", ap)):
                if lhs == rhs * qpow(e):
                    out.append(Violation("cond3", e, f"{lhs_name} = {rhs_name} q^{e}"))
    return out


def _conditions_symmetric(d, a, ap, s, p, c) -> list[Violation]:
    """The same inequalities written through s = b + b' and p = bb'."""
    out = []
    for e in _qset(2 * d - 2, 2 * d - 1):
        if a == ap * qpow(e):
            out.append(Violation("cond1", e, f"a = a' q^{e}"))
    for e in _qset(2 * d - 2, 2 * d - 1):
        r = qpow(e)
        # b = b' r or b' = b r  <=>  p (1 + r)^2 - r s^2 = 0
        if not (p * (1 + r) ** 2 - r * s * s):
            out.append(Violation("cond2", e, f"b = b' q^{e}"))
    for e in _qset(d - 1, d):
        for name, coef in (("a", a), ("a'", ap)):
            t = c * coef * qpow(e)
            if not (p - s * t + t * t):
                out.append(Violation("cond3", e, f"b/c or b'/c = {name} q^{e}"))
    return out


# entries

def _gap(d: int, i: int) -> RationalFunction:
    """q^(d+1) + q^(-d-1) - q^(d-2i-1) - q^(d-2i+1)."""
    return qpow(d + 1) + qpow(-d - 1) - qpow(d - 2 * i - 1) - qpow(d - 2 * i + 1)


def _entries(d, alpha, alpha_star, a, ap, s, p, c):
    """theta, x, y, z of the construction, with b, b' entering through s, p."""
    cinv = c.inverse()
    theta = theta_closed_form(d, alpha, a, ap)
    x = tuple(alpha_star + s * qpow(d - 2 * i) + ap * c * qpow(d - 2 * i) * _gap(d, i)
              for i in range(d + 1))
    y = []
    for i in range(1, d + 1):
        u = ap * c * qpow(d - 2 * i + 1)
        # (b - u)(b' - u) = p - s u + u^2
        y.append(qdiff(i) * (qpow(d - i + 1) - qpow(i - d - 1)) * (p - s * u + u * u) * cinv)
    z = tuple(-c * qpow(d - 2 * i + 1) for i in range(1, d + 1))
    return theta, x, tuple(y), z


def assemble(theta: Sequence, x: Sequence, y: Sequence, z: Sequence) -> tuple[FieldMatrix, FieldMatrix]:
    """The lower-bidiagonal A and tridiagonal A* with the given entries."""
    n = len(theta)
    a = [[ZERO] * n for _ in range(n)]
    s = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = rf(theta[i])
        s[i][i] = rf(x[i])
        if i:
            a[i][i - 1] = ONE
            s[i - 1][i] = rf(y[i - 1])
            s[i][i - 1] = rf(z[i - 1])
    return FieldMatrix._wrap(a), FieldMatrix._wrap(s)


def build(cf: ClosedFormParams, *, force: bool = False) -> LBTDPair:
    """The LB-TD pair of the seven-parameter family.

    Raises ConditionsViolated unless the inequalities hold; force=True skips
    that check (the result is then generally not a Leonard pair).
    """
    if cf.c is None:
        raise MissingC("c is required")
    if not force:
        bad = check_conditions(cf)
        if bad:
            raise ConditionsViolated(bad)
    theta, x, y, z = _entries(cf.d, cf.alpha, cf.alpha_star, cf.a, cf.a_prime,
                              cf.b + cf.b_prime, cf.b * cf.b_prime, cf.c)
    a, astar = assemble(theta, x, y, z)
    return LBTDPair(cf.d, a, astar, cf)


def theta_star_of(cf: ClosedFormParams) -> Seq:
    return theta_closed_form(cf.d, cf.alpha_star, cf.b, cf.b_prime)


def parameter_array_of(cf: ClosedFormParams) -> ParameterArray:
    if cf.c is None:
        raise MissingC("c is required")
    bad = check_conditions(cf)
    if bad:
        raise ConditionsViolated(bad)
    theta = theta_closed_form(cf.d, cf.alpha, cf.a, cf.a_prime)
    varphi, phi = vphi_phi_c_form(cf)
    return ParameterArray(cf.d, theta, theta_star_of(cf), varphi, phi).validate()


# certification

@dataclass(frozen=True)
class Certificate:
    """Outcome of verify_leonard_pair.

    astar_in_a_basis is A* written in the eigenbasis of A (ordering theta);
    a_in_astar_basis is A written in the eigenbasis of A* (ordering theta*).
    """

    theta_orderings: tuple[Seq, ...]
    theta_star_orderings: tuple[Seq, ...]
    astar_in_a_basis: FieldMatrix
    a_in_astar_basis: FieldMatrix


def verify_leonard_pair(pair: LBTDPair, theta_star: Sequence) -> Certificate:
    """Check both Leonard-pair axioms by exact change of basis."""
    if pair.d < 3:
        raise ValueError("verification requires d >= 3")
    theta_star = tuple(rf(v) for v in theta_star)
    if len(theta_star) != pair.d + 1:
        raise EigenvalueMismatch("need d+1 eigenvalues for A*")
    if len(set(theta_star)) != len(theta_star):
        raise EigenvalueMismatch("eigenvalues of A* are not mutually distinct")
    if not is_lbtd_pair(pair.A, pair.Astar):
        raise NotALeonardPair("the pair is not LB-TD shaped", axiom="shape")
    theta = pair.theta
    if len(set(theta)) != len(theta):
        raise NotALeonardPair("A has a repeated eigenvalue", axiom="diagonalizable")
    try:
        p = eigenbasis_for(pair.A, theta)
    except (NotAnEigenvalue, DegenerateEigenvalue) as exc:
        raise NotALeonardPair(str(exc), axiom="diagonalizable") from exc
    astar_in_a = conjugate(pair.Astar, p)
    if not is_irreducible_tridiagonal(astar_in_a):
        raise NotALeonardPair("A* is not irreducible tridiagonal in an eigenbasis of A",
                              axiom="A diagonal, A* irreducible tridiagonal")
    try:
        a_in_astar = conjugate_by_eigenbasis(pair.Astar, pair.A, theta_star)
    except (NotAnEigenvalue, DegenerateEigenvalue) as exc:
        raise EigenvalueMismatch(str(exc)) from exc
    if not is_irreducible_tridiagonal(a_in_astar):
        raise NotALeonardPair("A is not irreducible tridiagonal in an eigenbasis of A*",
                              axiom="A* diagonal, A irreducible tridiagonal")
    # reversing an ordering conjugates by the flip permutation, which keeps
    # irreducible tridiagonal matrices irreducible tridiagonal
    return Certificate((theta, theta[::-1]), (theta_star, theta_star[::-1]),
                       astar_in_a, a_in_astar)


def has_lbtd_form(a, a_prime, b, b_prime, xi) -> bool:
    """At least two of aa', bb', xi are nonzero."""
    flags = [bool(rf(a) * rf(a_prime)), bool(rf(b) * rf(b_prime)), bool(rf(xi))]
    return sum(flags) >= 2


# recovery

@dataclass(frozen=True)
class RecoveryResult:
    """Parameters reproducing a pair.

    If q_inverted is false the pair equals build(params()); if it is true the
    pair is the entrywise q -> 1/q image of build(params()). b and b' enter the
    entries only through their sum and product; b_split holds the two roots
    of t^2 - (b+b') t + bb', possibly in a quadratic extension.
    """

    d: int
    q_inverted: bool
    alpha: RationalFunction
    a: RationalFunction
    a_prime: RationalFunction
    c: RationalFunction
    alpha_star: RationalFunction
    b_plus_bprime: RationalFunction
    b_times_bprime: RationalFunction
    b_split: tuple | None = None

    @property
    def xi(self) -> RationalFunction:
        return -self.a * self.a_prime * self.c - self.b_times_bprime / self.c

    @property
    def b_split_rational(self) -> bool:
        return self.b_split is not None and all(
            isinstance(v, RationalFunction) for v in self.b_split)

    def params(self) -> ClosedFormParams:
        if not self.b_split_rational:
            raise ValueError("b and b' do not lie in Q(q)")
        b, bp = self.b_split
        return ClosedFormParams(d=self.d, a=self.a, a_prime=self.a_prime, b=b, b_prime=bp,
                                c=self.c, alpha=self.alpha, alpha_star=self.alpha_star)

    def rebuild(self) -> LBTDPair:
        theta, x, y, z = _entries(self.d, self.alpha, self.alpha_star, self.a, self.a_prime,
                                  self.b_plus_bprime, self.b_times_bprime, self.c)
        a, astar = assemble(theta, x, y, z)
        pair = LBTDPair(self.d, a, astar)
        return pair.map(invert_q) if self.q_inverted else pair

    def to_json(self) -> dict:
        out = {"d": self.d, "q_inverted": self.q_inverted}
        for name in ("alpha", "a", "a_prime", "c", "alpha_star",
                     "b_plus_bprime", "b_times_bprime"):
            out[name] = getattr(self, name).to_json()
        out["b_split"] = None if self.b_split is None else [v.to_json() for v in self.b_split]
        out["xi"] = self.xi.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> RecoveryResult:
        from .qfield import element_from_json
        dec = RationalFunction.from_json
        split = obj.get("b_split")
        return cls(d=int(obj["d"]), q_inverted=bool(obj["q_inverted"]),
                   alpha=dec(obj["alpha"]), a=dec(obj["a"]), a_prime=dec(obj["a_prime"]),
                   c=dec(obj["c"]), alpha_star=dec(obj["alpha_star"]),
                   b_plus_bprime=dec(obj["b_plus_bprime"]),
                   b_times_bprime=dec(obj["b_times_bprime"]),
                   b_split=None if split is None else tuple(element_from_json(v) for v in split))


def split_sum_product(s, p):
    """Roots (b, b') of t^2 - s t + p; b takes the + square root."""
    s, p = rf(s), rf(p)
    disc = s * s - 4 * p
    try:
        r = sqrt_exact(disc)
    except NotASquare:
        return (QuadExtElement(s / 2, ONE / 2, disc, check=False),
                QuadExtElement(s / 2, -ONE / 2, disc, check=False))
    return (s + r) / 2, (s - r) / 2


def recover_params(pair: LBTDPair) -> RecoveryResult:
    """Read the seven construction parameters back off an LB-TD pair."""
    d = pair.d
    if d < 3:
        raise ValueError("recovery requires d >= 3")
    if not is_lbtd_pair(pair.A, pair.Astar):
        raise NotInFamily("the pair is not LB-TD shaped", step=0)
    theta, x, y, z = pair.theta, pair.x, pair.y, pair.z

    # orientation from the subdiagonal of A*: z_2 = z_1 q^-2 in the working q
    ratio = z[1] / z[0]
    if ratio == qpow(-2):
        inverted = False
    elif ratio == qpow(2):
        inverted = True
        theta, x, y, z = (tuple(invert_q(v) for v in seq) for seq in (theta, x, y, z))
    else:
        raise DegenerateZ(f"z_2/z_1 = {ratio} is neither q^2 nor q^-2", step=2)

    try:
        alpha, a, ap = fit_theta_params(theta)
    except NoFit as exc:
        raise NotInFamily(str(exc), step=1) from exc

    for i in range(1, d + 1):
        if z[i - 1] != z[0] * qpow(2 - 2 * i):
            raise NotInFamily(f"z_{i} != z_1 q^{2 - 2 * i}", step=2)

    c = -z[0] * qpow(1 - d)

    r0 = x[0] - ap * c * qpow(d) * _gap(d, 0)
    r1 = x[1] - ap * c * qpow(d - 2) * _gap(d, 1)
    s = (r0 - r1) / (qpow(d) - qpow(d - 2))
    alpha_star = r0 - s * qpow(d)

    t = ap * c * qpow(d - 1)
    p = y[0] * c / (qdiff(1) * qdiff(d)) + s * t - t * t

    expect = _entries(d, alpha, alpha_star, a, ap, s, p, c)
    for name, got, want in zip("theta x y z".split(), (theta, x, y, z), expect):
        for k, (g, w) in enumerate(zip(got, want)):
            if g != w:
                label = k if name in ("theta", "x") else k + 1
                raise NotInFamily(f"{name}_{label} does not match the family", step=6)

    bad = _conditions_symmetric(d, a, ap, s, p, c)
    if bad:
        raise NotInFamily("recovered parameters violate " + "; ".join(map(str, bad)), step=6)

    return RecoveryResult(d=d, q_inverted=inverted, alpha=alpha, a=a, a_prime=ap, c=c,
                          alpha_star=alpha_star, b_plus_bprime=s, b_times_bprime=p,
                          b_split=split_sum_product(s, p))


# closed forms of the entries in each case of the recovery analysis

CASE_TAGS = ("generic",
             "a_eq_apq2d2.i", "a_eq_apq2d2.ii", "a_eq_apq2d2.iii",
             "ap_eq_aq2d2.i", "ap_eq_aq2d2.ii", "ap_eq_aq2d2.iii")


def case_entry_forms(cf: ClosedFormParams, case_tag: str) -> tuple[Seq, Seq, Seq]:
    """(x, y, z) of A* as given by the closed forms of one recovery case.

    All cases assume alpha = alpha* = 0. The generic case and the (iii)
    subcases take z_1 = -c q^(d-1) from cf.c; subcases (i)/(ii) take xi from
    cf (directly, or through c) and fix z_1 themselves.
    """
    if case_tag not in CASE_TAGS:
        raise ValueError(f"unknown case {case_tag!r}")
    if cf.alpha or cf.alpha_star:
        raise CaseHypothesisViolated("case forms assume alpha = alpha* = 0")
    d, a, ap, b, bp = cf.d, cf.a, cf.a_prime, cf.b, cf.b_prime
    big = qpow(2 * d + 2)
    family, _, sub = case_tag.partition(".")
    if family == "generic":
        if a == ap * big or ap == a * big:
            raise CaseHypothesisViolated("generic case needs a != a'q^(2d+2) and a' != aq^(2d+2)")
    elif family == "a_eq_apq2d2":
        if a != ap * big:
            raise CaseHypothesisViolated("needs a = a' q^(2d+2)")
    elif ap != a * big:
        raise CaseHypothesisViolated("needs a' = a q^(2d+2)")
    if (family != "generic") and not a:
        raise CaseHypothesisViolated("needs a != 0")

    rng = range(d + 1)
    rng1 = range(1, d + 1)
    sy = [qdiff(i) * (qpow(i - d - 1) - qpow(d - i + 1)) for i in rng1]  # (q^i-q^-i)(q^(i-d-1)-q^(d-i+1))

    if sub in ("", "iii"):
        if cf.c is None:
            raise MissingC("z_1 comes from c in this case")
        z1 = -cf.c * qpow(d - 1)
        if family == "generic":
            xc = [ap * qpow(1 - 2 * i) for i in rng]
            yc = [ap * qpow(2 - 2 * i) for i in rng1]
        elif family == "a_eq_apq2d2":
            xc = [a * qpow(-2 * d - 2 * i - 1) for i in rng]
            yc = [a * qpow(-2 * d - 2 * i) for i in rng1]
        else:
            xc = [a * qpow(2 * d - 2 * i + 3) for i in rng]
            yc = [a * qpow(2 * d - 2 * i + 4) for i in rng1]
        if sub == "iii" and cf.xi is not None:
            want = (a * a * qpow(-3 * d - 1) * z1 if family == "a_eq_apq2d2"
                    else a * a * qpow(d + 3) * z1) + b * bp * qpow(d - 1) / z1
            if cf.xi != want:
                raise CaseHypothesisViolated("subcase (iii) relation between xi and z_1 fails")
        x = tuple((b + bp) * qpow(d - 2 * i) - xc[i] * _gap(d, i) * z1 for i in rng)
        y = tuple(qpow(d - 1) * sy[i - 1] * (b + yc[i - 1] * z1) * (bp + yc[i - 1] * z1) / z1
                  for i in rng1)
        z = tuple(qpow(2 - 2 * i) * z1 for i in rng1)
        return x, y, z

    xi = cf.xi if cf.xi is not None else cf.with_xi().xi
    first, second = (b, bp) if sub == "i" else (bp, b)
    ainv = a.inverse()
    # the (ii) forms are the (i) forms with b and b' exchanged
    syr = [-v for v in sy]  # (q^i-q^-i)(q^(d-i+1)-q^(i-d-1))
    if family == "a_eq_apq2d2":
        x = tuple(-ainv * qpow(2 * d - 2 * i + 1) * xi + first * qpow(-2 * i - 1) * _gap(d, i)
                  for i in rng)
        y = tuple(qpow(-d - 2 * i - 1) * syr[i - 1]
                  * (qpow(d + 1) * xi + a * first * qpow(-2 * i) + a * second * qpow(2 * i))
                  for i in rng1)
        z = tuple(-ainv * first * qpow(2 * d - 2 * i + 2) for i in rng1)
    else:
        x = tuple(-ainv * qpow(-2 * i - 1) * xi + first * qpow(2 * d - 2 * i + 1) * _gap(d, i)
                  for i in rng)
        y = tuple(qpow(3 * d - 2 * i + 3) * syr[i - 1]
                  * (qpow(-d - 1) * xi + a * first * qpow(2 * d - 2 * i + 2)
                     + a * second * qpow(2 * i - 2 * d - 2))
                  for i in rng1)
        z = tuple(-ainv * first * qpow(-2 * i) for i in rng1)
    return x, y, z


def case_reparametrization(cf: ClosedFormParams, case_tag: str) -> ClosedFormParams:
    """Construction parameters whose build reproduces case_entry_forms(cf, case_tag).

    Subcases (i)/(ii) replace (b, b', c) by (a c q^-(d+1), bb' q^(d+1)/(a c),
    b q^(d+1)/a) when a = a'q^(2d+2), with the exponent signs flipped when
    a' = a q^(2d+2); (ii) first exchanges b and b'. Other cases keep cf.
    """
    family, _, sub = case_tag.partition(".")
    if sub not in ("i", "ii"):
        return cf
    if cf.c is None:
        raise MissingC("c is required")
    a, c = cf.a, cf.c
    b, bp = (cf.b, cf.b_prime) if sub == "i" else (cf.b_prime, cf.b)
    k = -(cf.d + 1) if family == "a_eq_apq2d2" else cf.d + 1
    return replace(cf, b=a * c * qpow(k), b_prime=b * bp * qpow(-k) / (a * c),
                   c=b * qpow(-k) / a, xi=None)
