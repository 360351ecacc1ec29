import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charbounds.polynomials import (
    Cyc,
    Poly,
    cyclotomic_polynomial,
    dyadic_str,
    grevlex_key,
    poly_interval,
    qq,
    qq_str,
)


def P(nvars, terms):
    return Poly(nvars, {tuple(m): qq(c) for m, c in terms.items()})


def test_qq_parsing():
    assert qq("3/4") == qq(3) / qq(4)
    assert qq_str(qq(-7, 2)) == "-7/2"
    assert qq_str(qq(5)) == "5"
    assert dyadic_str(qq(3, 8)) == "3/2^3"
    assert dyadic_str(qq(4)) == "4"


def test_grevlex_within_degree():
    # same total degree: compare reversed exponents, negated
    assert grevlex_key((2, 0)) > grevlex_key((1, 1)) > grevlex_key((0, 2))
    # degree dominates
    assert grevlex_key((1, 0)) < grevlex_key((0, 2))


def test_poly_arithmetic():
    x = Poly.variable(2, 0)
    y = Poly.variable(2, 1)
    p = x * x - y.scale(qq(2))  # x^2 - 2y
    q = x + y
    assert p * q == q * p
    assert p.evaluate_float((3.0, 1.0)) == pytest.approx(7.0)
    assert p.evaluate((qq(3), qq(1)), convert=qq) == qq(7)
    assert p.diff(0) == x.scale(qq(2))
    assert p.diff(1) == Poly.const(2, qq(-2))


def test_poly_pow_and_degree():
    x = Poly.variable(1, 0)
    p = (x + Poly.const(1, qq(1))) ** 5
    assert p.coeff((2,)) == qq(10)
    assert p.total_degree() == 5


def test_subs_values_partial():
    x = Poly.variable(3, 0)
    y = Poly.variable(3, 1)
    z = Poly.variable(3, 2)
    p = x * y + z**2
    q = p.subs_values({1: qq(3)})
    assert q == x.scale(qq(3)) + z**2


def test_content_primitive():
    p = P(1, {(2,): "4/3", (0,): "-2/3"})
    c, prim = p.content_primitive()
    assert c == qq(2, 3)
    assert prim == P(1, {(2,): 2, (0,): -1})


def test_json_round_trip():
    p = P(2, {(1, 2): "7/5", (0, 0): -3})
    assert Poly.from_json(2, p.to_json()) == p


@given(
    st.lists(
        st.tuples(
            st.tuples(st.integers(0, 3), st.integers(0, 3)),
            st.integers(-9, 9),
        ),
        max_size=6,
    ),
    st.integers(-4, 4),
    st.integers(-4, 4),
)
@settings(max_examples=60, deadline=None)
def test_interval_contains_exact_value(terms, a, b):
    p = Poly(2, {})
    for m, c in terms:
        p = p + Poly(2, {m: qq(c)})
    boxes = [(qq(a), qq(a) + qq(1, 2)), (qq(b), qq(b) + qq(1, 3))]
    lo, hi = poly_interval(p, boxes)
    val = p.evaluate((qq(a), qq(b)), convert=qq)
    assert lo <= val <= hi


def test_cyclotomic_small():
    # dense ascending integer coefficients
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_degree_is_totient():
    from math import gcd

    for m in range(1, 30):
        phi = sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)
        assert len(cyclotomic_polynomial(m)) - 1 == phi


def test_cyc_zeta3_sum():
    z = Cyc.zeta_power(3, 1)
    s = z + z**2
    assert s.is_rational() and s.as_rational() == qq(-1)


def test_cyc_zeta4_square():
    z = Cyc.zeta_power(4, 1)
    assert z**2 == Cyc.from_rational(4, qq(-1))


def test_cyc_real_detection():
    z5 = Cyc.zeta_power(5, 1)
    golden = z5 + z5**4  # 2 cos(2 pi/5)
    assert golden.is_real()
    assert not golden.is_rational()
    assert abs(golden.approx().imag) < 1e-12
    assert golden.approx().real == pytest.approx(0.6180339887, abs=1e-9)


def test_cyc_mixed_orders():
    # -1 as a 2nd root equals zeta_6^3
    a = Cyc.zeta_power(2, 1)
    b = Cyc.zeta_power(6, 3)
    assert (a - b).is_zero()


def test_cyc_conjugate_abs():
    z = Cyc.zeta_power(7, 2)
    n = z * z.conjugate()
    assert n.is_rational() and n.as_rational() == qq(1)
