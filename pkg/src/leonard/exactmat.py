"""Dense matrices over Q(q).

Rows and columns are indexed 0..n-1. Matrices are immutable; every operation
returns a new FieldMatrix.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    DegenerateEigenvalue,
    NotAnEigenvalue,
    NotSquare,
    SingularMatrix,
    SizeMismatch,
)
from .qfield import ONE, ZERO, RationalFunction, rf

Vector = tuple[RationalFunction, ...]


class FieldMatrix:
    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(rf(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        self.n_rows = len(rows)
        self.n_cols = width
        self.entries: tuple[Vector, ...] = rows

    @classmethod
    def _wrap(cls, rows) -> FieldMatrix:
        m = object.__new__(cls)
        m.entries = tuple(tuple(r) for r in rows)
        m.n_rows = len(m.entries)
        m.n_cols = len(m.entries[0])
        return m

    @classmethod
    def identity(cls, n: int) -> FieldMatrix:
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> FieldMatrix:
        return cls._wrap([[ZERO] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> FieldMatrix:
        n = len(values)
        return cls._wrap([[rf(values[i]) if i == j else ZERO for j in range(n)]
                          for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> FieldMatrix:
        return cls._wrap([[rf(c[i]) for c in cols] for i in range(len(cols[0]))])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij) -> RationalFunction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def diagonal(self, offset: int = 0) -> Vector:
        """Entries (i, i + offset); offset -1 is the subdiagonal."""
        n = self.n_rows
        if offset >= 0:
            return tuple(self.entries[i][i + offset] for i in range(n - offset))
        return tuple(self.entries[i][i + offset] for i in range(-offset, n))

    def transpose(self) -> FieldMatrix:
        return FieldMatrix._wrap(zip(*self.entries))

    def map(self, fn) -> FieldMatrix:
        return FieldMatrix._wrap([[fn(x) for x in r] for r in self.entries])

    def replace(self, i: int, j: int, value) -> FieldMatrix:
        rows = [list(r) for r in self.entries]
        rows[i][j] = rf(value)
        return FieldMatrix._wrap(rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        _same_shape(self, other)
        return FieldMatrix._wrap([[a + b for a, b in zip(r, s)]
                                  for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        _same_shape(self, other)
        return FieldMatrix._wrap([[a - b for a, b in zip(r, s)]
                                  for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> FieldMatrix:
        return self.map(lambda x: -x)

    def scale(self, c) -> FieldMatrix:
        c = rf(c)
        return self.map(lambda x: x * c)

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        if self.n_cols != other.n_rows:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.n_cols)]
        return FieldMatrix._wrap([[_dot(r, c) for c in cols] for r in self.entries])

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.n_cols:
            raise SizeMismatch("vector length does not match matrix")
        v = [rf(x) for x in v]
        return tuple(_dot(r, v) for r in self.entries)

    def shift(self, lam) -> FieldMatrix:
        """M - lam*I."""
        lam = rf(lam)
        return FieldMatrix._wrap([[x - lam if i == j else x for j, x in enumerate(r)]
                                  for i, r in enumerate(self.entries)])

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def to_json(self) -> dict:
        return {"rows": self.n_rows, "cols": self.n_cols,
                "entries": [[x.to_json() for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> FieldMatrix:
        m = cls._wrap([[RationalFunction.from_json(x) for x in r] for r in obj["entries"]])
        if m.shape != (obj.get("rows", m.n_rows), obj.get("cols", m.n_cols)):
            raise ValueError("matrix JSON dimensions disagree with entries")
        return m

    def __repr__(self) -> str:
        return f"FieldMatrix({self.n_rows}x{self.n_cols})"

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self.entries]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("  ".join(c.rjust(width) for c in r) for r in cells)


def _dot(a: Sequence[RationalFunction], b: Sequence[RationalFunction]) -> RationalFunction:
    acc = ZERO
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y
    return acc


def _same_shape(a: FieldMatrix, b: FieldMatrix) -> None:
    if a.shape != b.shape:
        raise SizeMismatch(f"shape mismatch {a.shape} vs {b.shape}")


def _require_square(m: FieldMatrix) -> None:
    if not m.is_square:
        raise NotSquare(f"matrix is {m.n_rows}x{m.n_cols}")


# shape predicates

def is_tridiagonal(m: FieldMatrix) -> bool:
    _require_square(m)
    return all(not x for i, r in enumerate(m.entries)
               for j, x in enumerate(r) if abs(i - j) >= 2)


def is_irreducible_tridiagonal(m: FieldMatrix) -> bool:
    if not is_tridiagonal(m):
        return False
    return all(m.diagonal(1)) and all(m.diagonal(-1))


def is_lower_bidiagonal(m: FieldMatrix) -> bool:
    _require_square(m)
    return all(not x for i, r in enumerate(m.entries)
               for j, x in enumerate(r) if j > i or i - j >= 2)


def is_upper_bidiagonal(m: FieldMatrix) -> bool:
    _require_square(m)
    return all(not x for i, r in enumerate(m.entries)
               for j, x in enumerate(r) if i > j or j - i >= 2)


def is_lower_triangular(m: FieldMatrix) -> bool:
    _require_square(m)
    return all(not x for i, r in enumerate(m.entries) for j, x in enumerate(r) if j > i)


def is_lbtd_pair(a: FieldMatrix, astar: FieldMatrix) -> bool:
    """A lower bidiagonal with all subdiagonal entries 1, A* irreducible tridiagonal."""
    _require_square(a)
    _require_square(astar)
    if a.shape != astar.shape:
        raise SizeMismatch("A and A* differ in size")
    if not is_lower_bidiagonal(a):
        return False
    if any(x != ONE for x in a.diagonal(-1)):
        return False
    return is_irreducible_tridiagonal(astar)


# elimination

def _row_reduce(rows: list[list[RationalFunction]], ncols: int):
    """In-place reduced row echelon form on the first ncols columns.

    Pivot choice is the first nonzero entry in the column. Returns pivot columns.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve(m: FieldMatrix, rhs: Sequence) -> Vector:
    """Exact x with m @ x == rhs."""
    _require_square(m)
    n = m.n_rows
    if len(rhs) != n:
        raise SizeMismatch("right-hand side length mismatch")
    if is_lower_triangular(m):
        return _forward_solve(m, [rf(v) for v in rhs])
    rows = [list(r) + [rf(b)] for r, b in zip(m.entries, rhs)]
    pivots = _row_reduce(rows, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return tuple(rows[i][n] for i in range(n))


def solve_matrix(m: FieldMatrix, rhs: FieldMatrix) -> FieldMatrix:
    """Exact X with m @ X == rhs."""
    _require_square(m)
    n = m.n_rows
    if rhs.n_rows != n:
        raise SizeMismatch("right-hand side row count mismatch")
    if is_lower_triangular(m):
        cols = [_forward_solve(m, list(rhs.column(j))) for j in range(rhs.n_cols)]
        return FieldMatrix.from_columns(cols)
    rows = [list(r) + list(b) for r, b in zip(m.entries, rhs.entries)]
    pivots = _row_reduce(rows, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return FieldMatrix._wrap([r[n:] for r in rows])


def _forward_solve(m: FieldMatrix, b: list[RationalFunction]) -> Vector:
    x: list[RationalFunction] = []
    for i, r in enumerate(m.entries):
        if not r[i]:
            raise SingularMatrix("zero on the diagonal of a triangular matrix")
        acc = b[i] - _dot(r[:i], x)
        x.append(acc / r[i] if r[i] != ONE else acc)
    return tuple(x)


def inverse(m: FieldMatrix) -> FieldMatrix:
    return solve_matrix(m, FieldMatrix.identity(m.n_rows))


def conjugate(m: FieldMatrix, p: FieldMatrix) -> FieldMatrix:
    """P^-1 M P."""
    _require_square(m)
    _require_square(p)
    _same_shape(m, p)
    return solve_matrix(p, m @ p)


def determinant(m: FieldMatrix) -> RationalFunction:
    """Bareiss fraction-free elimination; the divisions are exact in Q(q)."""
    _require_square(m)
    n = m.n_rows
    a = [list(r) for r in m.entries]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return ZERO
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]) / prev
            a[i][k] = ZERO
        prev = akk
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def nullspace(m: FieldMatrix) -> list[Vector]:
    """Basis of the right kernel, each vector with first nonzero coordinate 1."""
    rows = [list(r) for r in m.entries]
    n = m.n_cols
    pivots = _row_reduce(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(_normalize_vector(v))
    return basis


def _normalize_vector(v: Sequence[RationalFunction]) -> Vector:
    lead = next(x for x in v if x)
    if lead == ONE:
        return tuple(v)
    inv = lead.inverse()
    return tuple(x * inv for x in v)


# eigenvectors for known eigenvalues

def eigenvector(m: FieldMatrix, lam) -> Vector:
    """Kernel vector of M - lam*I, first nonzero coordinate 1.

    Lower-triangular input uses forward substitution and irreducible
    tridiagonal input uses the three-term recurrence; anything else falls
    back to a nullspace computation.
    """
    _require_square(m)
    lam = rf(lam)
    if is_lower_triangular(m):
        return _triangular_eigenvector(m, lam)
    if is_irreducible_tridiagonal(m):
        return _tridiagonal_eigenvector(m, lam)
    basis = nullspace(m.shift(lam))
    if not basis:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
    if len(basis) > 1:
        raise DegenerateEigenvalue(f"eigenspace of {lam} has dimension {len(basis)}")
    return basis[0]


def _triangular_eigenvector(m: FieldMatrix, lam: RationalFunction) -> Vector:
    n = m.n_rows
    hits = [i for i in range(n) if m[i, i] == lam]
    if not hits:
        raise NotAnEigenvalue(f"{lam} is not on the diagonal")
    if len(hits) > 1:
        basis = nullspace(m.shift(lam))
        if len(basis) > 1:
            raise DegenerateEigenvalue(f"eigenspace of {lam} has dimension {len(basis)}")
        return basis[0]
    r = hits[0]
    v = [ZERO] * n
    v[r] = ONE
    for i in range(r + 1, n):
        row = m.entries[i]
        acc = _dot(row[r:i], v[r:i])
        v[i] = -acc / (row[i] - lam)
    return tuple(v)


def _tridiagonal_eigenvector(m: FieldMatrix, lam: RationalFunction) -> Vector:
    # Row i: z_i v_{i-1} + (x_i - lam) v_i + y_{i+1} v_{i+1} = 0.
    n = m.n_rows
    v = [ONE]
    for i in range(n - 1):
        acc = (m[i, i] - lam) * v[i]
        if i:
            acc = acc + m[i, i - 1] * v[i - 1]
        v.append(-acc / m[i, i + 1])
    last = (m[n - 1, n - 1] - lam) * v[n - 1]
    if n > 1:
        last = last + m[n - 1, n - 2] * v[n - 2]
    if last:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
    return tuple(v)


def eigenbasis_for(m: FieldMatrix, eigenvalues: Sequence) -> FieldMatrix:
    """Matrix whose column r spans the eigenspace of eigenvalues[r]."""
    _require_square(m)
    if len(eigenvalues) != m.n_rows:
        raise SizeMismatch("need one eigenvalue per row")
    lams = [rf(x) for x in eigenvalues]
    if len(set(lams)) != len(lams):
        raise DegenerateEigenvalue("eigenvalues are not mutually distinct")
    return FieldMatrix.from_columns([eigenvector(m, lam) for lam in lams])


def left_eigenvector(m: FieldMatrix, lam) -> Vector:
    return eigenvector(m.transpose(), lam)


def conjugate_by_eigenbasis(m: FieldMatrix, other: FieldMatrix,
                            eigenvalues: Sequence) -> FieldMatrix:
    """P^-1 other P where P = eigenbasis_for(m, eigenvalues).

    With distinct eigenvalues the left eigenvectors w_i satisfy
    w_i . v_j = 0 for i != j, so the rows of P^-1 are w_i / (w_i . v_i) and no
    elimination is needed.
    """
    p = eigenbasis_for(m, eigenvalues)
    lams = [rf(x) for x in eigenvalues]
    mt = m.transpose()
    out = []
    cols = [p.column(j) for j in range(p.n_cols)]
    other_cols = [other.apply(c) for c in cols]
    for i, lam in enumerate(lams):
        w = eigenvector(mt, lam)
        scale = _dot(w, cols[i])
        if not scale:
            raise SingularMatrix("eigenbasis is singular")
        inv = scale.inverse()
        out.append([_dot(w, oc) * inv for oc in other_cols])
    return FieldMatrix._wrap(out)
