from fractions import Fraction

import pytest
import sympy as sp
from conftest import nonzero_rational_functions, polys, rational_functions
from hypothesis import assume, given
from hypothesis import strategies as st

import oracle
from leonard.errors import NotASquare, PoleAtPoint, ZeroDenominator
from leonard.qfield import (
    ONE,
    Q,
    ZERO,
    Poly,
    QuadExtElement,
    RationalFunction,
    element_from_json,
    eval_at,
    invert_q,
    is_square,
    normalize,
    qpow,
    rf,
    sqrt_exact,
)


def P(*coeffs):
    return Poly(coeffs)


class TestNormalize:
    def test_common_factor_cancels(self):
        f = normalize(P(-1, 0, 1), P(-1, 1))
        assert f.num == P(1, 1) and f.den == P(1)

    def test_zero_is_canonical(self):
        f = normalize(P(), P(5))
        assert f.num == Poly() and f.den == P(1)
        assert f == ZERO

    def test_denominator_made_monic(self):
        f = normalize(P(0, 2), P(4))
        assert f.num.coeffs == (0, Fraction(1, 2)) and f.den == P(1)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            normalize(P(1), P())

    def test_rational_coefficients(self):
        f = normalize(P(Fraction(1, 2), Fraction(1, 3)), P(Fraction(2, 3)))
        assert f.den == P(1)
        assert f.num == P(Fraction(3, 4), Fraction(1, 2))

    @given(polys(), polys().filter(lambda p: not p.is_zero()))
    def test_invariants(self, num, den):
        f = normalize(num, den)
        assert f.den.coeffs[-1] == 1
        assert not f.num.coeffs or f.num.coeffs[-1] != 0
        g = sp.gcd(oracle.sym(RationalFunction(f.num)), oracle.sym(RationalFunction(f.den)))
        assert sp.Poly(g, oracle.q).degree() == 0
        assert normalize(f.num, f.den) == f

    @given(polys(), polys().filter(lambda p: not p.is_zero()))
    def test_agrees_with_sympy_cancel(self, num, den):
        f = normalize(num, den)
        expr = oracle.sym(RationalFunction(num)) / oracle.sym(RationalFunction(den))
        n_ref, d_ref = sp.fraction(sp.cancel(expr))
        if n_ref == 0:
            assert f == ZERO
            return
        lead = sp.Poly(d_ref, oracle.q).LC()
        want_num = sp.Poly(n_ref / lead, oracle.q).all_coeffs()[::-1]
        want_den = sp.Poly(d_ref / lead, oracle.q).all_coeffs()[::-1]
        assert [sp.Rational(c.numerator, c.denominator) for c in f.num.coeffs] == want_num
        assert [sp.Rational(c.numerator, c.denominator) for c in f.den.coeffs] == want_den


class TestArithmetic:
    def test_q_plus_inverse(self):
        f = Q + Q.inverse()
        assert f.num == P(1, 0, 1) and f.den == P(0, 1)

    def test_difference_of_squares(self):
        f = (Q - 1 / Q) * (Q + 1 / Q)
        assert f == qpow(2) - qpow(-2)
        assert f.num == P(-1, 0, 0, 0, 1) and f.den == P(0, 0, 1)

    @given(nonzero_rational_functions)
    def test_self_quotient(self, f):
        assert f / f == ONE

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Q / ZERO

    def test_mixed_scalars(self):
        assert Q + Fraction(1, 2) == (2 * Q + 1) / 2
        assert 3 - Q == -(Q - 3)
        assert Fraction(1, 3) / Q == 1 / (3 * Q)

    def test_negative_powers(self):
        assert (Q + 1) ** -2 * (Q + 1) ** 2 == ONE
        assert qpow(-3) == 1 / (Q * Q * Q)

    def test_string_form(self):
        assert str(qpow(2) - qpow(-2)) == "(q^4 - 1)/q^2"
        assert str(rf(Fraction(-3, 4))) == "-3/4"

    @given(rational_functions(), rational_functions())
    def test_add_then_subtract(self, f, g):
        assert (f + g) - g == f

    @given(rational_functions(), nonzero_rational_functions)
    def test_multiply_then_divide(self, f, g):
        assert (f * g) / g == f

    @given(rational_functions(), rational_functions(), rational_functions())
    def test_ring_axioms(self, f, g, h):
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h

    @given(rational_functions(), rational_functions())
    def test_equality_matches_cross_multiplication(self, f, g):
        cross = f.num * g.den - g.num * f.den
        assert (f == g) == cross.is_zero()
        assert (f == g) == (hash(f) == hash(g) and f == g)

    @given(rational_functions(), rational_functions())
    def test_sum_and_product_match_oracle(self, f, g):
        assert oracle.same(f + g, oracle.sym(f) + oracle.sym(g))
        assert oracle.same(f * g, oracle.sym(f) * oracle.sym(g))


class TestInvertQ:
    def test_power(self):
        assert invert_q(qpow(2)) == qpow(-2)

    def test_symmetric_fixed(self):
        assert invert_q(Q + 1 / Q) == Q + 1 / Q
        beta = qpow(2) + qpow(-2)
        assert invert_q(beta) == beta

    def test_matches_substitution(self):
        f = (Q ** 3 - 2 * Q + 5) / (Q - 3)
        assert oracle.same(invert_q(f), oracle.sym(f).subs(oracle.q, 1 / oracle.q))

    @given(rational_functions())
    def test_involution(self, f):
        assert invert_q(invert_q(f)) == f

    @given(rational_functions(), rational_functions())
    def test_automorphism(self, f, g):
        assert invert_q(f * g) == invert_q(f) * invert_q(g)
        assert invert_q(f + g) == invert_q(f) + invert_q(g)


class TestSqrt:
    def test_monomial(self):
        assert sqrt_exact(qpow(2)) == Q

    def test_perfect_square(self):
        assert sqrt_exact((Q - 1 / Q) ** 2) == (qpow(2) - 1) / Q

    def test_odd_degree(self):
        with pytest.raises(NotASquare):
            sqrt_exact(Q)

    def test_rational_constant(self):
        assert sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
        with pytest.raises(NotASquare):
            sqrt_exact(2)
        with pytest.raises(NotASquare):
            sqrt_exact(-(Q + 1) ** 2)

    def test_zero(self):
        assert sqrt_exact(ZERO) == ZERO

    def test_sign_convention(self):
        r = sqrt_exact((1 - Q) ** 2)
        assert r.num.coeffs[-1] > 0

    @given(nonzero_rational_functions)
    def test_square_always_found(self, f):
        r = sqrt_exact(f * f)
        assert r * r == f * f
        assert r in (f, -f)

    @given(rational_functions())
    def test_result_squares_back(self, f):
        try:
            r = sqrt_exact(f)
        except NotASquare:
            assert not is_square(f)
        else:
            assert r * r == f

    def test_squarefree_repeated_factors(self):
        f = (Q + 1) ** 4 * (Q - 2) ** 2 * (Q ** 2 + 3) ** 6 / (Q - 5) ** 2
        assert sqrt_exact(f) ** 2 == f
        with pytest.raises(NotASquare):
            sqrt_exact(f * (Q + 1))


class TestEvalAt:
    def test_examples(self):
        assert eval_at((qpow(2) + 1) / Q, 2) == Fraction(5, 2)
        assert eval_at(qpow(2) + qpow(-2), 2) == Fraction(17, 4)

    def test_pole(self):
        with pytest.raises(PoleAtPoint):
            eval_at(1 / (Q - 1), 1)

    @given(rational_functions(), rational_functions(),
           st.fractions(min_value=-5, max_value=5, max_denominator=7))
    def test_homomorphism(self, f, g, q0):
        assume(q0 != 0)
        try:
            vf, vg = eval_at(f, q0), eval_at(g, q0)
        except PoleAtPoint:
            return
        assert eval_at(f * g, q0) == vf * vg
        assert eval_at(f + g, q0) == vf + vg
        assert oracle.at(f, q0) == vf


class TestQuadExt:
    def test_radical_squares_to_discriminant(self):
        r = QuadExtElement(0, 1, Q)
        assert r * r == Q

    def test_rejects_square_discriminant(self):
        with pytest.raises(ValueError):
            QuadExtElement(1, 1, qpow(2))

    def test_field_operations(self):
        x = QuadExtElement(Q, 2, Q + 1)
        y = QuadExtElement(1, -Q, Q + 1)
        assert (x * y) / y == x
        assert x * x.inverse() == 1
        assert x.norm() == Q * Q - 4 * (Q + 1)
        assert (x + x.conjugate()) == 2 * Q

    def test_mixing_extensions_fails(self):
        with pytest.raises(ValueError):
            QuadExtElement(0, 1, Q) + QuadExtElement(0, 1, Q + 1)

    def test_json(self):
        x = QuadExtElement(Fraction(1, 2), Q, Q + 3)
        assert element_from_json(x.to_json()) == x


class TestSerialization:
    def test_format(self):
        f = (qpow(2) - 1) / (2 * Q)
        assert f.to_json() == {"num": ["-1/2", "0", "1/2"], "den": ["0", "1"]}

    @given(rational_functions())
    def test_round_trip(self, f):
        assert RationalFunction.from_json(f.to_json()) == f
        assert element_from_json(f.to_json()) == f
