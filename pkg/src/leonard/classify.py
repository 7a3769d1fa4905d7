"""Leonard-pair types from the zero pattern of (a, a', b, b', xi)."""

from __future__ import annotations

from enum import Enum

from .qfield import rf


class LeonardType(Enum):
    QRacah = "q-racah"
    QHahn = "q-hahn"
    DualQHahn = "dual-q-hahn"
    QuantumQKrawtchouk = "quantum-q-krawtchouk"
    QKrawtchouk = "q-krawtchouk"
    AffineQKrawtchouk = "affine-q-krawtchouk"
    DualQKrawtchouk = "dual-q-krawtchouk"

    def __str__(self):
        return self.value


class _Unclassified:
    """Pattern outside the table; such scalars cannot describe a Leonard pair."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    value = "unclassified"

    def __repr__(self):
        return "Unclassified"

    __str__ = lambda self: self.value


Unclassified = _Unclassified()

# (a, a', b, b', xi) nonzero flags; None in the xi slot means "any"
TABLE: dict[tuple, LeonardType] = {
    (1, 1, 1, 1, None): LeonardType.QRacah,
    (0, 1, 1, 1, 1): LeonardType.QHahn,
    (1, 0, 1, 1, 1): LeonardType.QHahn,
    (1, 1, 0, 1, 1): LeonardType.DualQHahn,
    (1, 1, 1, 0, 1): LeonardType.DualQHahn,
    (1, 0, 0, 1, 1): LeonardType.QuantumQKrawtchouk,
    (0, 1, 1, 0, 1): LeonardType.QuantumQKrawtchouk,
    (0, 1, 1, 1, 0): LeonardType.QKrawtchouk,
    (1, 0, 1, 1, 0): LeonardType.QKrawtchouk,
    (0, 1, 0, 1, 1): LeonardType.AffineQKrawtchouk,
    (1, 0, 1, 0, 1): LeonardType.AffineQKrawtchouk,
    (1, 1, 0, 1, 0): LeonardType.DualQKrawtchouk,
    (1, 1, 1, 0, 0): LeonardType.DualQKrawtchouk,
}


def pattern(a, a_prime, b, b_prime, xi) -> tuple[int, ...]:
    return tuple(int(bool(rf(v))) for v in (a, a_prime, b, b_prime, xi))


def classify_type(a, a_prime, b, b_prime, xi):
    """The LeonardType whose table row matches, else Unclassified."""
    pat = pattern(a, a_prime, b, b_prime, xi)
    hit = TABLE.get(pat[:4] + (None,)) or TABLE.get(pat)
    return hit if hit is not None else Unclassified


def lbtd_types() -> frozenset[LeonardType]:
    return frozenset({LeonardType.QRacah, LeonardType.QHahn, LeonardType.DualQHahn})


def table_patterns() -> list[tuple[int, ...]]:
    """Every concrete 0/1 pattern covered by the table."""
    out = []
    for key in TABLE:
        if key[4] is None:
            out += [key[:4] + (0,), key[:4] + (1,)]
        else:
            out.append(key)
    return out
