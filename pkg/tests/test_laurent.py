from fractions import Fraction

from hypothesis import given, strategies as st

from heckecells.laurent import (
    LaurentPoly, RationalFunction, ONE, ZERO, V, VINV,
    poly_gcd, poly_divide_exact,
)


def lp(d):
    return LaurentPoly(d)


small_polys = st.dictionaries(
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=-6, max_value=6),
    max_size=5,
).map(LaurentPoly)


def test_basic_arithmetic():
    p = V + VINV
    assert p.text() == "v^-1+v"
    assert (p * p).text() == "v^-2+2+v^2"
    assert (p - p) == ZERO
    assert p[1] == 1 and p[0] == 0


def test_bar_swaps_v():
    p = lp({2: 3, -1: 1})
    assert p.bar() == lp({-2: 3, 1: 1})


@given(small_polys, small_polys)
def test_bar_is_ring_map(p, q):
    assert (p + q).bar() == p.bar() + q.bar()
    assert (p * q).bar() == p.bar() * q.bar()
    assert p.bar().bar() == p


@given(small_polys)
def test_at_one_is_coefficient_sum(p):
    assert p.at_one() == sum(p.coeffs.values())


def test_valuation_and_shift():
    p = lp({-2: 1, 3: 4})
    assert p.valuation() == -2
    assert p.shifted(2) == lp({0: 1, 5: 4})
    try:
        ZERO.valuation()
        assert False, "valuation of zero should raise"
    except (ValueError, ArithmeticError):
        pass


@given(small_polys, small_polys)
def test_gcd_divides_both(p, q):
    g = poly_gcd(p, q)
    if p or q:
        assert poly_divide_exact(p, g) * g == p
        assert poly_divide_exact(q, g) * g == q


def test_rational_reduce_and_series():
    # v / (1 + v^2) = v - v^3 + v^5 - ...
    r = RationalFunction(V, ONE + V * V)
    assert r.series_coeff(1) == 1
    assert r.series_coeff(2) == 0
    assert r.series_coeff(3) == -1
    assert r.series_coeff(5) == 1
    # reduction cancels common factors
    r2 = RationalFunction(V * (ONE + V), (ONE + V))
    assert r2.as_poly() == V


def test_rational_field_ops():
    a = RationalFunction(ONE, ONE + V)
    b = RationalFunction(V, ONE + V)
    assert (a + b).as_poly() == ONE
    assert (a * (ONE + V)).as_poly() == ONE
    assert RationalFunction.from_fraction(Fraction(3, 2)).at_one() \
        == Fraction(3, 2)


def test_subs_v_squared():
    p = lp({0: 1, 1: 2})
    assert p.subs_v_squared() == lp({0: 1, 2: 2})
