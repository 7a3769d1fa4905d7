"""Deterministic parameter grids for batch experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lbtd import check_conditions
from .params import ClosedFormParams
from .qfield import qpow, rf


@dataclass(frozen=True)
class GridConfig:
    ds: tuple[int, ...] = (3, 4, 5, 6)
    per_d: int = 14
    seed: int = 20240613
    pool: tuple[Fraction, ...] = tuple(Fraction(n, m) for n in range(-7, 8) if n
                                       for m in (1, 2, 3))
    shifts: tuple[tuple[Fraction, Fraction], ...] = ((Fraction(1, 2), Fraction(-3)),
                                                     (Fraction(2), Fraction(5, 3)))


def _pick(rng: random.Random, pool) -> Fraction:
    return pool[rng.randrange(len(pool))]


def generic_grid(cfg: GridConfig = GridConfig()) -> list[ClosedFormParams]:
    """Tuples with all of a, a', b, b', c small nonzero rationals passing the conditions.

    Every d gets per_d tuples; half of them are translated by a nonzero (alpha, alpha*).
    """
    rng = random.Random(cfg.seed)
    out = []
    for d in cfg.ds:
        made = 0
        while made < cfg.per_d:
            a, ap, b, bp, c = (_pick(rng, cfg.pool) for _ in range(5))
            alpha, alpha_star = (0, 0) if made % 2 == 0 else cfg.shifts[(made // 2) % len(cfg.shifts)]
            cf = ClosedFormParams(d=d, a=a, a_prime=ap, b=b, b_prime=bp, c=c,
                                  alpha=alpha, alpha_star=alpha_star)
            if not check_conditions(cf):
                out.append(cf)
                made += 1
    return out


def degenerate_grid() -> list[ClosedFormParams]:
    """Tuples with a zero among a, a', b, b' (q-Hahn and dual q-Hahn patterns)."""
    rows = []
    for d in (3, 4, 5):
        rows += [
            ClosedFormParams(d=d, a=0, a_prime=2, b=5, b_prime=3, c=1),
            ClosedFormParams(d=d, a=3, a_prime=0, b=-1, b_prime=4, c=2),
            ClosedFormParams(d=d, a=1, a_prime=2, b=0, b_prime=3, c=1),
            ClosedFormParams(d=d, a=-2, a_prime=5, b=7, b_prime=0, c=Fraction(1, 3)),
        ]
    return [cf for cf in rows if not check_conditions(cf)]


def boundary_grid() -> list[ClosedFormParams]:
    """Tuples with a = a' q^(2d+2) or a' = a q^(2d+2)."""
    rows = []
    for d, ap, b, bp, c in ((3, 1, 5, 3, 1), (4, 2, -3, 7, 2), (5, -1, 4, 9, Fraction(1, 2))):
        rows.append(ClosedFormParams(d=d, a=rf(ap) * qpow(2 * d + 2), a_prime=ap,
                                     b=b, b_prime=bp, c=c))
    for d, a, b, bp, c in ((3, 2, 1, 6, 5), (4, -1, 5, 2, 1)):
        rows.append(ClosedFormParams(d=d, a=a, a_prime=rf(a) * qpow(2 * d + 2),
                                     b=b, b_prime=bp, c=c))
    return [cf for cf in rows if not check_conditions(cf)]


def symbolic_grid() -> list[ClosedFormParams]:
    """A few tuples whose parameters are themselves functions of q."""
    q = qpow(1)
    rows = [
        ClosedFormParams(d=3, a=q, a_prime=2, b=q + 1, b_prime=3, c=1),
        ClosedFormParams(d=3, a=1, a_prime=q * q, b=5, b_prime=1 - q, c=q, alpha=q),
        ClosedFormParams(d=4, a=2, a_prime=1, b=q, b_prime=qpow(-1), c=3, alpha_star=1),
    ]
    return [cf for cf in rows if not check_conditions(cf)]


def full_grid(cfg: GridConfig = GridConfig()) -> list[ClosedFormParams]:
    return generic_grid(cfg) + degenerate_grid() + boundary_grid() + symbolic_grid()


FAMILIES = ("cond1", "cond2", "cond3")


def violating_grid(family: str, count: int = 6, seed: int = 7) -> list[ClosedFormParams]:
    """Tuples violating exactly one inequality family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    rng = random.Random(seed)
    pool = GridConfig().pool
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("could not generate violators")
        d = rng.choice((3, 4, 5))
        a, ap, b, bp, c = (rf(_pick(rng, pool)) for _ in range(5))
        if family == "cond1":
            a = ap * qpow(2 * d - 2 * rng.randint(1, 2 * d - 1))
        elif family == "cond2":
            b = bp * qpow(2 * d - 2 * rng.randint(1, 2 * d - 1))
        else:
            e = d - 1 - 2 * rng.randint(0, d - 1)
            target = rng.choice((a, ap)) * c * qpow(e)
            if rng.random() < 0.5:
                b = target
            else:
                bp = target
        cf = ClosedFormParams(d=d, a=a, a_prime=ap, b=b, b_prime=bp, c=c)
        if {v.condition for v in check_conditions(cf)} == {family}:
            out.append(cf)
    return out
