from functools import reduce

import pytest
import sympy as sp
from conftest import rational_functions
from hypothesis import given
from hypothesis import strategies as st

import oracle
from leonard.errors import (
    DegenerateEigenvalue,
    NotAnEigenvalue,
    NotSquare,
    SingularMatrix,
    SizeMismatch,
)
from leonard.exactmat import (
    FieldMatrix,
    conjugate,
    conjugate_by_eigenbasis,
    determinant,
    eigenbasis_for,
    eigenvector,
    inverse,
    is_irreducible_tridiagonal,
    is_lbtd_pair,
    is_tridiagonal,
    nullspace,
    solve,
)
from leonard.lbtd import build
from leonard.params import ClosedFormParams
from leonard.qfield import ONE, Q, ZERO, qpow, rf

REF = ClosedFormParams(d=3, a=1, a_prime=2, b=5, b_prime=3, c=1)


def ones_tridiagonal(n):
    return FieldMatrix([[1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)])


@st.composite
def matrices(draw, n=None):
    n = n or draw(st.integers(min_value=1, max_value=3))
    return FieldMatrix([[draw(rational_functions(max_degree=2)) for _ in range(n)]
                        for _ in range(n)])


class TestPredicates:
    def test_identity_is_tridiagonal(self):
        assert is_tridiagonal(FieldMatrix.identity(4))

    def test_far_entry_breaks_tridiagonal(self):
        assert not is_tridiagonal(FieldMatrix.identity(4).replace(0, 2, Q))

    def test_two_by_two_always_tridiagonal(self):
        assert is_tridiagonal(FieldMatrix([[1, 2], [3, 4]]))

    def test_irreducible(self):
        assert not is_irreducible_tridiagonal(FieldMatrix.identity(3))
        assert is_irreducible_tridiagonal(ones_tridiagonal(4))

    def test_non_square(self):
        with pytest.raises(NotSquare):
            is_tridiagonal(FieldMatrix([[1, 2, 3]]))

    def test_constructed_pair(self):
        pair = build(REF)
        assert is_irreducible_tridiagonal(pair.Astar)
        assert all(y * z for y, z in zip(pair.y, pair.z))
        assert is_lbtd_pair(pair.A, pair.Astar)

    def test_lbtd_rejections(self):
        pair = build(REF)
        assert not is_lbtd_pair(pair.A.replace(1, 0, 2), pair.Astar)
        assert not is_lbtd_pair(pair.A, FieldMatrix.diag(pair.x))
        with pytest.raises(SizeMismatch):
            is_lbtd_pair(pair.A, FieldMatrix.identity(3))


class TestSolve:
    def test_identity(self):
        v = (Q, rf(2), 1 / Q)
        assert solve(FieldMatrix.identity(3), v) == v

    def test_diagonal(self):
        assert solve(FieldMatrix.diag([Q, qpow(2)]), [1, 1]) == (qpow(-1), qpow(-2))

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            solve(FieldMatrix([[1, Q], [2, 2 * Q]]), [1, 0])

    @given(matrices(), st.data())
    def test_round_trip(self, m, data):
        v = [data.draw(rational_functions(max_degree=2)) for _ in range(m.n_rows)]
        try:
            x = solve(m, v)
        except SingularMatrix:
            assert determinant(m) == ZERO
            return
        assert m.apply(x) == tuple(v)

    def test_against_sympy(self):
        m = FieldMatrix([[Q, 1, 0], [2, Q + 1, 1 / Q], [0, 3, Q * Q]])
        v = [1, Q, 2]
        x = solve(m, v)
        ref = sp.Matrix([[oracle.sym(e) for e in r] for r in m.entries]).LUsolve(
            sp.Matrix([1, oracle.q, 2]))
        assert all(oracle.same(a, b) for a, b in zip(x, ref))


class TestDeterminantAndConjugation:
    @given(matrices())
    def test_determinant_matches_sympy(self, m):
        ref = sp.Matrix([[oracle.sym(e) for e in r] for r in m.entries]).det(method="berkowitz")
        assert oracle.same(determinant(m), ref)

    def test_identity_conjugation(self):
        m = ones_tridiagonal(3)
        assert conjugate(m, FieldMatrix.identity(3)) == m

    @given(matrices(n=3), matrices(n=3))
    def test_group_action_and_invariants(self, m, p):
        try:
            pinv = inverse(p)
        except SingularMatrix:
            return
        c = conjugate(m, p)
        assert conjugate(c, pinv) == m
        assert determinant(c) == determinant(m)
        assert sum(c.diagonal(), ZERO) == sum(m.diagonal(), ZERO)

    def test_lower_bidiagonal_determinant(self):
        pair = build(REF)
        assert determinant(pair.A) == reduce(lambda u, v: u * v, pair.theta)

    def test_nullspace_normalized(self):
        m = FieldMatrix([[1, Q, 2], [2, 2 * Q, 4], [0, 0, 0]])
        basis = nullspace(m)
        assert len(basis) == 2
        for v in basis:
            assert not any(m.apply(v))
            assert next(x for x in v if x) == ONE


class TestEigenvectors:
    def test_diagonal_gives_identity(self):
        vals = [Q, rf(2), qpow(-1), rf(7)]
        assert eigenbasis_for(FieldMatrix.diag(vals), vals) == FieldMatrix.identity(4)

    def test_lower_bidiagonal_pattern(self):
        pair = build(REF)
        for r, lam in enumerate(pair.theta):
            v = eigenvector(pair.A, lam)
            assert all(not v[i] for i in range(r)) and v[r] == ONE
            assert not any(pair.A.shift(lam).apply(v))

    def test_not_an_eigenvalue(self):
        with pytest.raises(NotAnEigenvalue):
            eigenvector(FieldMatrix([[1, 0], [1, 2]]), 3)
        with pytest.raises(NotAnEigenvalue):
            eigenvector(ones_tridiagonal(3), 1)

    def test_degenerate(self):
        with pytest.raises(DegenerateEigenvalue):
            eigenvector(FieldMatrix([[1, 0, 0], [0, 1, 0], [1, 1, 2]]).transpose(), 1)

    def test_eigenbasis_identity(self):
        pair = build(REF)
        theta_star = [5 * qpow(2 * i - 3) + 3 * qpow(3 - 2 * i) for i in range(4)]
        for m, vals in ((pair.A, pair.theta), (pair.Astar, theta_star)):
            p = eigenbasis_for(m, vals)
            assert m @ p == p @ FieldMatrix.diag(vals)

    def test_astar_conjugated_is_irreducible_tridiagonal(self):
        pair = build(REF)
        p = eigenbasis_for(pair.A, pair.theta)
        assert is_irreducible_tridiagonal(conjugate(pair.Astar, p))

    def test_left_eigenvector_conjugation_matches_solve(self):
        pair = build(REF)
        theta_star = [5 * qpow(2 * i - 3) + 3 * qpow(3 - 2 * i) for i in range(4)]
        p = eigenbasis_for(pair.Astar, theta_star)
        assert conjugate_by_eigenbasis(pair.Astar, pair.A, theta_star) == conjugate(pair.A, p)

    def test_tridiagonal_recurrence_matches_nullspace(self):
        m = FieldMatrix([[0, 1, 0], [2, 0, 1], [0, 2, 0]])
        # eigenvalues of this matrix are 0 and +-2
        v = eigenvector(m, 2)
        assert v == (ONE, rf(2), rf(2))


class TestSerialization:
    @given(matrices())
    def test_round_trip(self, m):
        assert FieldMatrix.from_json(m.to_json()) == m

    def test_format(self):
        obj = FieldMatrix.identity(2).to_json()
        assert obj["rows"] == 2 and obj["cols"] == 2
        assert obj["entries"][0][0] == {"num": ["1"], "den": ["1"]}
