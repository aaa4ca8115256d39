import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fgdioph.bounds import FRIEDMAN_FLOOR, s_unit_bound
from fgdioph.mpoly import IntPoly
from fgdioph.nfheight import (AlgNumber, abs_log_height, disc_bounds, h_hat_rational, mahler_measure,
                              quadratic_field_disc, regulator_bounds)
from fgdioph.numfield import NumberField

X = sympy.Symbol("X")


def poly(*asc):
    return IntPoly.from_univariate(list(asc))


@pytest.mark.parametrize("a, value", [
    (AlgNumber.rational(2), math.log(2)),
    (AlgNumber(poly(-2, 0, 1), 1), math.log(2) / 2),
    (AlgNumber.rational(Fraction(1, 3)), math.log(3)),
    (AlgNumber(poly(-1, -1, 1), 1), math.log((1 + 5 ** 0.5) / 2) / 2),
])
def test_height_examples(a, value):
    assert abs_log_height(a) == pytest.approx(value, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15])
def test_roots_of_unity_have_height_zero(n):
    cyc = sympy.Poly(sympy.cyclotomic_poly(n, X), X)
    p = IntPoly.from_univariate([int(v) for v in reversed(cyc.all_coeffs())])
    assert abs_log_height(AlgNumber(p, 0)) == pytest.approx(0, abs=1e-12)


def test_non_root_of_unity_on_unit_circle_has_positive_height():
    # 5X^2 - 6X + 5 has both roots of modulus 1 but they are not roots of unity
    assert abs_log_height(AlgNumber(poly(5, -6, 5), 0)) == pytest.approx(math.log(5) / 2)


@pytest.mark.parametrize("d, disc", [(2, 8), (5, 5), (-1, -4), (-3, -3), (3, 12), (-5, -20)])
def test_quadratic_discriminants(d, disc):
    assert quadratic_field_disc(d) == disc


@pytest.mark.parametrize("d", [0, 1, 4, -8, 12])
def test_quadratic_rejects(d):
    with pytest.raises(ValueError):
        quadratic_field_disc(d)


def test_extension_bound_example():
    b = disc_bounds("extension", n=2, d_L=1, h_G=math.log(2), ln_abs_disc=0)
    assert float(b.ln_value) == pytest.approx(math.log(512))
    assert b.dominates(8)
    zero = disc_bounds("extension", n=2, d_L=1, h_G=0)
    assert float(zero.ln_value) == pytest.approx(3 * math.log(2))


def test_composite_single_factor():
    b = disc_bounds("composite", d_L=4, factors=[(2, math.log(5))])
    assert float(b.ln_value) == pytest.approx(2 * math.log(5))


def test_regulator_examples():
    assert float(regulator_bounds(1, 1, 2, 1).R_S.ln_value) == pytest.approx(0, abs=1e-30)
    b = regulator_bounds(8, 2, 2, 2)
    assert b.R_S.value_float() == pytest.approx(math.sqrt(8) * math.log(8))
    assert b.R_S.value_float() == pytest.approx(5.881, abs=1e-3)


@settings(max_examples=40)
@given(st.integers(1, 10 ** 6), st.integers(1, 4), st.integers(2, 9), st.integers(1, 4))
def test_regulator_monotone(disc, d_L, Q, s):
    base = regulator_bounds(disc, d_L, Q, s).R_S
    for args in [(disc + 1, d_L, Q, s), (disc, d_L + 1, Q, s), (disc, d_L, Q + 1, s), (disc, d_L, Q, s + 1)]:
        assert regulator_bounds(*args).R_S >= base


def test_friedman_floor_enforced():
    with pytest.raises(ValueError):
        s_unit_bound(3, 1, 1, 0, 1, FRIEDMAN_FLOOR / 2, 1, 2, 2, 1, 1)


def test_h_hat_of_rationals():
    assert h_hat_rational([Fraction(1, 2), 3]) == pytest.approx(math.log(6))


def test_mahler_measure_matches_sympy_roots():
    p = poly(3, -7, 0, 2, 5)
    roots = [complex(r) for r in sympy.Poly([5, 2, 0, -7, 3], X).nroots(n=30)]
    expected = 5 * math.prod(max(1, abs(r)) for r in roots)
    assert float(mahler_measure(p)) == pytest.approx(expected, rel=1e-12)


quadratic_fields = st.integers(-30, 30).filter(lambda d: d not in (0, 1) and sympy.factorint(abs(d)) and
                                               all(e == 1 for e in sympy.factorint(abs(d)).values()))


@settings(max_examples=40)
@given(quadratic_fields, st.integers(-6, 6), st.integers(-6, 6).filter(bool), st.integers(1, 4))
def test_height_identities(d, a, b, k):
    K = NumberField(poly(-d, 0, 1))
    alpha = K.elem([a, b])  # a + b sqrt(d), never zero and never rational
    h = abs_log_height(alpha)
    assert abs_log_height(alpha ** k) == pytest.approx(k * h, rel=1e-9, abs=1e-9)
    assert abs_log_height(alpha.inv()) == pytest.approx(h, rel=1e-9, abs=1e-9)


def squarefree_ds(count):
    out = []
    d = -60
    while len(out) < count:
        if d not in (0, 1) and all(e == 1 for e in sympy.factorint(abs(d)).values()):
            out.append(d)
        d += 1
    return out


@pytest.mark.parametrize("d", squarefree_ds(50))
def test_extension_bound_dominates_quadratic_discriminant(d):
    b = disc_bounds("extension", n=2, d_L=1, h_G=math.log(abs(d)) if abs(d) > 1 else 0)
    assert b.dominates(abs(quadratic_field_disc(d)))


def test_alg_number_validation():
    with pytest.raises(ValueError):
        AlgNumber(poly(-4, 0, 1))  # reducible
    with pytest.raises(ValueError):
        AlgNumber(poly(-2, 0, 2))  # not primitive
    with pytest.raises(ValueError):
        AlgNumber(poly(-2, 0, 1), 2)


def test_from_elem_picks_the_right_conjugate():
    K = NumberField(poly(-2, 0, 1))
    a = AlgNumber.from_elem(K.elem([1, 1]), 1)  # 1 + sqrt 2 at the positive root
    assert mpmath.re(a.value) == pytest.approx(1 + math.sqrt(2))
