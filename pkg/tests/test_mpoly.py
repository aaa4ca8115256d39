import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fgdioph.mpoly import IntPoly, NotDivisible, arith, gcd_many, gcd_primitive, grlex_key, lcm
from strategies import from_sympy, int_polys, to_sympy

z = IntPoly.var(0, 1)
X1, X2 = IntPoly.var(0, 2), IntPoly.var(1, 2)


def test_measure_of_sample_polynomial():
    m = (3 * X1 ** 2 * X2 - 5).measure()
    assert (m.deg, m.len, m.size) == (3, 8, 3)
    assert m.h == pytest.approx(math.log(5))
    assert not m.is_zero


def test_measure_zero_and_variable():
    m = IntPoly.zero(2).measure()
    assert m.size == 1 and m.h == 0 and m.is_zero
    v = X1.measure()
    assert (v.deg, v.h, v.size) == (1, 0, 1)


@pytest.mark.parametrize("p, q, kind, expected", [
    (z + 1, z - 1, "mul", z ** 2 - 1),
    (2 * z + 3, -2 * z, "add", IntPoly.const(3, 1)),
    (z ** 2, z ** 2, "sub", IntPoly.zero(1)),
])
def test_arith_examples(p, q, kind, expected):
    assert arith(p, q, kind) == expected


def test_length_submultiplicative_attained():
    assert ((z + 1) ** 2).length() == 4 == (z + 1).length() ** 2


def test_evaluate_examples():
    assert (X1 ** 2 + X2).evaluate([2, 3]) == 7
    g = 3 * z ** 2
    assert g.evaluate([2]) == 12
    assert math.log(12) <= 1 * math.log(2) + g.height() + 2 * math.log(2)
    assert IntPoly.const(5, 3).evaluate([9, -4, 0]) == 5


@pytest.mark.parametrize("p, q, g", [
    (2 * z ** 2 - 2, 4 * z + 4, 2 * z + 2),
    (X1 * X2, X1 ** 2, X1),
    (IntPoly.const(3, 1), 6 * z, IntPoly.const(3, 1)),
])
def test_gcd_examples(p, q, g):
    assert gcd_primitive(p, q) == g


def test_exact_div_rejects():
    with pytest.raises(NotDivisible):
        (z ** 2 + 1).exact_div(z + 1)


def test_lcm_and_gcd_many():
    assert lcm(z ** 2 - 1, z + 1) == z ** 2 - 1
    assert gcd_many([2 * z, 4 * z ** 2, 6 * z]) == 2 * z


@settings(max_examples=1000)
@given(int_polys(), int_polys())
def test_length_sub_additive_and_multiplicative(p, q):
    assert (p + q).length() <= p.length() + q.length()
    assert (p * q).length() <= p.length() * q.length()


@given(int_polys(nonzero=True))
def test_height_below_log_length(p):
    assert p.height() <= math.log(p.length()) + 1e-12


@settings(max_examples=150)
@given(int_polys(nvars=3, max_deg=4, max_terms=6), int_polys(nvars=3, max_deg=4, max_terms=6))
def test_product_matches_sympy(p, q):
    assert p * q == from_sympy(to_sympy(p) * to_sympy(q), 3)


@settings(max_examples=30)
@given(int_polys(nvars=2, max_deg=12, max_coeff=10 ** 6, max_terms=40),
       int_polys(nvars=2, max_deg=12, max_coeff=10 ** 6, max_terms=40))
def test_large_products_match_sympy(p, q):
    # products of this size go through the packed-integer path
    assert p * q == from_sympy(to_sympy(p) * to_sympy(q), 2)


@settings(max_examples=120)
@given(int_polys(nvars=2, nonzero=True), int_polys(nvars=2, nonzero=True), int_polys(nvars=2, nonzero=True))
def test_gcd_divides_and_cofactors(a, b, c):
    p, q = a * c, b * c
    g = gcd_primitive(p, q)
    assert p.exact_div(g) * g == p
    assert q.exact_div(g) * g == q
    oracle = from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)), 2)
    assert g in (oracle, -oracle)


@given(int_polys(nvars=3), int_polys(nvars=3), st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_evaluate_is_ring_homomorphism(p, q, u):
    assert (p * q).evaluate(u) == p.evaluate(u) * q.evaluate(u)
    assert (p + q).evaluate(u) == p.evaluate(u) + q.evaluate(u)


@given(int_polys(nvars=3, max_coeff=10 ** 30))
def test_json_round_trip(p):
    assert IntPoly.from_json(p.to_json(), 3) == p


@given(int_polys(nvars=2, nonzero=True), int_polys(nvars=2, nonzero=True))
def test_exact_div_inverts_multiplication(p, q):
    assert (p * q).exact_div(q) == p


@given(int_polys(nvars=2))
def test_terms_are_clean_and_sorted(p):
    terms = p.terms()
    assert all(c != 0 and len(e) == 2 for e, c in terms)
    keys = [grlex_key(e) for e, _ in terms]
    assert keys == sorted(keys, reverse=True)
