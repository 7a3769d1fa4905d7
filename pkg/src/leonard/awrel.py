"""Askey-Wilson relations of a Leonard pair."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import InconsistentScalars, NonzeroAlpha, NotRecurrent
from .exactmat import FieldMatrix, _require_square, _same_shape
from .params import (
    ClosedFormParams,
    ParameterArray,
    Seq,
    beta_of_q,
    extended_ends,
    fundamental_beta,
    gamma_rho,
    qdiff,
)
from .qfield import RationalFunction, qpow, rf


@dataclass(frozen=True)
class AWScalars:
    beta: RationalFunction
    gamma: RationalFunction
    gamma_star: RationalFunction
    rho: RationalFunction
    rho_star: RationalFunction
    omega: RationalFunction
    eta: RationalFunction
    eta_star: RationalFunction

    def dual(self) -> AWScalars:
        """Scalars for the pair with A and A* exchanged."""
        return AWScalars(self.beta, self.gamma_star, self.gamma, self.rho_star, self.rho,
                         self.omega, self.eta_star, self.eta)

    def replace(self, **changes) -> AWScalars:
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        vals.update({k: rf(v) for k, v in changes.items()})
        return AWScalars(**vals)

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name).to_json() for f in fields(self)}

    @classmethod
    def from_json(cls, obj) -> AWScalars:
        return cls(**{f.name: RationalFunction.from_json(obj[f.name]) for f in fields(cls)})


def tridiag_coeffs(p: ParameterArray) -> tuple[Seq, Seq]:
    """Diagonals (a_i) and (a*_i): A in a theta*-eigenbasis and A* in a theta-eigenbasis."""
    d, th, ths, vp = p.d, p.theta, p.theta_star, p.varphi

    def diag(main, other):
        out = [main[0] + vp[0] / (other[0] - other[1])]
        for i in range(1, d):
            out.append(main[i] + vp[i - 1] / (other[i] - other[i - 1])
                       + vp[i] / (other[i] - other[i + 1]))
        out.append(main[d] + vp[d - 1] / (other[d] - other[d - 1]))
        return tuple(out)

    return diag(th, ths), diag(ths, th)


def _constant(values, name: str) -> RationalFunction:
    first = values[0]
    for i, v in enumerate(values[1:], start=1):
        if v != first:
            raise InconsistentScalars(f"{name} differs between index 0 and {i} of its range")
    return first


def aw_scalars(p: ParameterArray) -> AWScalars:
    d = p.d
    if d < 3:
        raise ValueError("Askey-Wilson scalars need d >= 3")
    th, ths = p.theta, p.theta_star
    try:
        beta = fundamental_beta(th)
        if fundamental_beta(ths) != beta:
            raise InconsistentScalars("theta and theta* have different beta")
        gamma, rho = gamma_rho(th, beta)
        gamma_s, rho_s = gamma_rho(ths, beta)
    except NotRecurrent as exc:
        raise InconsistentScalars(str(exc)) from exc
    lo, hi = extended_ends(th, beta, gamma)
    lo_s, hi_s = extended_ends(ths, beta, gamma_s)
    ext = (lo,) + th + (hi,)        # ext[i + 1] = theta_i for -1 <= i <= d + 1
    ext_s = (lo_s,) + ths + (hi_s,)
    a, a_s = tridiag_coeffs(p)

    def t(i):
        return ext[i + 1]

    def ts(i):
        return ext_s[i + 1]

    omega = _constant([a_s[i] * (t(i) - t(i + 1)) + a_s[i - 1] * (t(i - 1) - t(i - 2))
                       - gamma_s * (t(i - 1) + t(i)) for i in range(1, d + 1)], "omega")
    eta = _constant([a_s[i] * (t(i) - t(i - 1)) * (t(i) - t(i + 1)) - gamma_s * t(i) ** 2
                     - omega * t(i) for i in range(d + 1)], "eta")
    eta_s = _constant([a[i] * (ts(i) - ts(i - 1)) * (ts(i) - ts(i + 1)) - gamma * ts(i) ** 2
                       - omega * ts(i) for i in range(d + 1)], "eta*")
    return AWScalars(beta, gamma, gamma_s, rho, rho_s, omega, eta, eta_s)


def aw_residuals(a: FieldMatrix, astar: FieldMatrix, s: AWScalars) -> tuple[FieldMatrix, FieldMatrix]:
    """Left minus right side of both relations."""
    _require_square(a)
    _same_shape(a, astar)
    n = a.n_rows
    eye = FieldMatrix.identity(n)
    a2, s2 = a @ a, astar @ astar
    as_, sa = a @ astar, astar @ a
    first = (a2 @ astar - (as_ @ a).scale(s.beta) + astar @ a2 - (as_ + sa).scale(s.gamma)
             - astar.scale(s.rho)) - (a2.scale(s.gamma_star) + a.scale(s.omega) + eye.scale(s.eta))
    second = (s2 @ a - (sa @ astar).scale(s.beta) + a @ s2 - (sa + as_).scale(s.gamma_star)
              - a.scale(s.rho_star)) - (s2.scale(s.gamma) + astar.scale(s.omega)
                                        + eye.scale(s.eta_star))
    return first, second


def verify_aw(a: FieldMatrix, astar: FieldMatrix, s: AWScalars) -> bool:
    first, second = aw_residuals(a, astar, s)
    return first.is_zero() and second.is_zero()


def closed_scalars(cf: ClosedFormParams, xi=None) -> AWScalars:
    """Scalars in closed form for a translation-free pair (alpha = alpha* = 0)."""
    if cf.alpha or cf.alpha_star:
        raise NonzeroAlpha("closed forms need alpha = alpha* = 0")
    if xi is None:
        xi = cf.with_xi().xi
    xi = rf(xi)
    a, ap, b, bp, d = cf.a, cf.a_prime, cf.b, cf.b_prime, cf.d
    q1, q2 = qdiff(1), qdiff(2)
    ends = qpow(d + 1) + qpow(-d - 1)
    zero = rf(0)
    return AWScalars(
        beta=beta_of_q(),
        gamma=zero,
        gamma_star=zero,
        rho=-a * ap * q2 * q2,
        rho_star=-b * bp * q2 * q2,
        omega=q1 * q1 * (ends * xi - (a + ap) * (b + bp)),
        eta=-q1 * q2 * ((a + ap) * xi - a * ap * (b + bp) * ends),
        eta_star=-q1 * q2 * ((b + bp) * xi - b * bp * (a + ap) * ends),
    )
