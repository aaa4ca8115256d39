import math
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fgdioph.forms import (BinaryForm, UniPoly, bareiss_det, berkowitz_det, det_sign, disc_bounds,
                           discriminant_det, discriminant_resultant)
from fgdioph.mpoly import IntPoly

X = sympy.Symbol("X")


def sympy_disc(coeffs):
    return int(sympy.discriminant(sympy.Poly(list(coeffs), X), X))


@pytest.mark.parametrize("coeffs, det", [
    ((1, 0, 0, -2), -108),
    ((1, 0, 0, 1), -27),
    ((1, 0, 0), 0),          # X^2 Y
    ((1, -1, -1, 1), 0),     # (X - Y)^2 (X + Y)
])
def test_discriminant_det_examples(coeffs, det):
    assert discriminant_det(BinaryForm(coeffs)) == det


@pytest.mark.parametrize("coeffs, value", [((1, 0, 0, 1), -27), ((1, 0, 0, -2), -108), ((1, -2, 1, 0), 0)])
def test_resultant_examples(coeffs, value):
    assert discriminant_resultant(UniPoly(coeffs)) == value


def test_quadratic_generic():
    a, b, c = (IntPoly.var(i, 3) for i in range(3))
    det = discriminant_det(BinaryForm((a, b, c)))
    assert det in (b * b - 4 * a * c, 4 * a * c - b * b)
    assert det == det_sign(2) * discriminant_resultant(BinaryForm((a, b, c)))


def test_disc_bound_examples():
    assert disc_bounds(3, 1, 1, 2).deg_bound == 4
    assert disc_bounds(3, 1, 1, 2).h_bound == pytest.approx(4 * (math.log(54) + 1))
    assert disc_bounds(3, 1, 1, 2).h_bound == pytest.approx(19.956, abs=1e-3)
    b = disc_bounds(2, 3, 2, 2)
    assert b.deg_bound == 6 and b.h_bound == pytest.approx(2 * (math.log(8 * math.comb(5, 2)) + 2))


def test_sign_map_is_calibrated():
    for n in range(2, 8):
        coeffs = [random.Random(n).randint(-5, 5) or 1 for _ in range(n + 1)]
        coeffs[0] = 1
        assert discriminant_det(BinaryForm(coeffs)) == det_sign(n) * sympy_disc(coeffs)


@settings(max_examples=200)
@given(st.integers(3, 5).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1).filter(lambda c: c[0] != 0)))
def test_det_matches_resultant(coeffs):
    F = BinaryForm(coeffs)
    det = discriminant_det(F)
    assert det == det_sign(F.n) * discriminant_resultant(F)
    assert det == det_sign(F.n) * sympy_disc(coeffs)


@settings(max_examples=100)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5), st.integers(-3, 3))
def test_repeated_linear_factor_gives_zero(rest, c):
    # (X - cY)^2 * G(X, Y)
    g = sympy.Poly(rest, X) if any(rest) else sympy.Poly([1], X)
    f = sympy.Poly([1, -c], X) ** 2 * g
    coeffs = [int(v) for v in f.all_coeffs()]
    assert discriminant_det(BinaryForm(coeffs)) == 0


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_berkowitz(M):
    assert bareiss_det(M) == berkowitz_det(M) == sympy.Matrix(M).det()


def test_rejects_zero_form_and_zero_leading_coefficient():
    with pytest.raises(ValueError):
        BinaryForm((0, 0, 0))
    with pytest.raises(ValueError):
        UniPoly((0, 1, 2))


@settings(max_examples=40)
@given(st.integers(1, 3), st.integers(1, 2), st.integers(2, 4), st.data())
def test_polynomial_coefficients_respect_bound(r, d, n, data):
    coeff = st.lists(st.tuples(st.tuples(*[st.integers(0, d)] * r).filter(lambda e: sum(e) <= d),
                               st.integers(-3, 3)), max_size=3).map(lambda ts: IntPoly(r, ts))
    coeffs = data.draw(st.lists(coeff, min_size=n + 1, max_size=n + 1).filter(
        lambda cs: not all(c.is_zero() for c in cs)))
    det = discriminant_det(BinaryForm(coeffs))
    h = max(max(c.height() for c in coeffs), 1.0)
    b = disc_bounds(n, d, h, r)
    assert det.degree() <= b.deg_bound
    assert det.is_zero() or det.height() <= b.h_bound
