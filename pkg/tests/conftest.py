import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from leonard.qfield import Poly, RationalFunction  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_ints = st.integers(min_value=-6, max_value=6)
fractions = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=4))
nonzero_fractions = fractions.filter(bool)


@st.composite
def polys(draw, max_degree=4):
    coeffs = draw(st.lists(small_ints, max_size=max_degree + 1))
    return Poly(coeffs)


@st.composite
def rational_functions(draw, max_degree=3):
    num = draw(polys(max_degree))
    den = draw(polys(max_degree).filter(lambda p: not p.is_zero()))
    shift = draw(st.integers(min_value=-2, max_value=2))
    f = RationalFunction(num, den)
    return f * RationalFunction(Poly([0, 1])) ** shift


nonzero_rational_functions = rational_functions().filter(bool)


@st.composite
def valid_params(draw, ds=(3, 4), shifted=True):
    """Construction parameters with nonzero rational a, a', b, b', c passing the inequalities."""
    from leonard.lbtd import check_conditions
    from leonard.params import ClosedFormParams

    d = draw(st.sampled_from(ds))
    a, ap, b, bp, c = (draw(nonzero_fractions) for _ in range(5))
    alpha = draw(fractions) if shifted else 0
    alpha_star = draw(fractions) if shifted else 0
    cf = ClosedFormParams(d=d, a=a, a_prime=ap, b=b, b_prime=bp, c=c,
                          alpha=alpha, alpha_star=alpha_star)
    from hypothesis import assume
    assume(not check_conditions(cf))
    return cf
