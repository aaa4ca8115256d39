import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fgdioph.ktower import CanonicalRep, RatFunc, Tower, TowerElem, canonicalize, measures
from fgdioph.mpoly import IntPoly
from fgdioph.nfheight import abs_log_height
from fgdioph.numfield import NumberField
from fgdioph.specialize import (AdmissibilityError, SpecializationData, SpecPoint, all_points, build_H,
                                find_admissible_u, specialize_elem, transfer_bounds)
from strategies import int_polys

z = IntPoly.var(0, 1)
ONE = IntPoly.one(1)
SQRTZ = Tower(1, (IntPoly.zero(1), -z))
S_SQRTZ = SpecializationData(SQRTZ, ONE)


def test_H_for_sqrt_z():
    assert build_H(S_SQRTZ) == -4 * z ** 2
    assert S_SQRTZ.n_floor() == 12


def test_H_for_trivial_tower():
    T = Tower.trivial(1)
    f = z - 5
    assert build_H(SpecializationData(T, f)) == -f


def test_scan_examples():
    assert find_admissible_u(S_SQRTZ, 3, enforce_floor=False) == (-3,)
    assert find_admissible_u(S_SQRTZ, 12) == (-12,)
    with pytest.raises(AdmissibilityError):
        find_admissible_u(S_SQRTZ, 3)
    cubic_f = SpecializationData(Tower.trivial(1), z * (z - 1) * (z - 2))
    assert find_admissible_u(cubic_f, 3, enforce_floor=False) == (-3,)
    const = SpecializationData(Tower.trivial(2), IntPoly.const(7, 2))
    assert find_admissible_u(const, 4, enforce_floor=False) == (-4, -4)


def test_scan_fails_when_H_vanishes_on_box():
    S = SpecializationData(Tower.trivial(1), z * (z - 1) * (z + 1))
    with pytest.raises(AdmissibilityError):
        find_admissible_u(S, 1, enforce_floor=False)


def test_rejects_root_of_H():
    with pytest.raises(AdmissibilityError):
        SpecPoint(S_SQRTZ, (0,), 1)


def test_w_squared_maps_to_u():
    w2 = SQRTZ.w() ** 2
    for pt in all_points(S_SQRTZ, (2,)):
        assert specialize_elem(S_SQRTZ, pt, w2) == 2


def test_rationals_fixed_and_units_nonzero():
    for pt in all_points(S_SQRTZ, (3,)):
        assert specialize_elem(S_SQRTZ, pt, SQRTZ.from_k0(Fraction(7, 2))) == Fraction(7, 2)
        assert not specialize_elem(S_SQRTZ, pt, SQRTZ.w()).is_zero()


def test_conjugates_split_over_square():
    pts = all_points(S_SQRTZ, (4,))
    imgs = sorted(specialize_elem(S_SQRTZ, pt, SQRTZ.w()).coords[0] for pt in pts)
    assert imgs == [-2, 2]


def test_field_disc_example():
    b = transfer_bounds("field_disc", D=2, q=1, d0=1, h0=1, u_norm=2)
    assert b.value_float() == pytest.approx(8 * (2 * math.e) ** 2)
    assert b.value_float() == pytest.approx(236.45, abs=0.01)


def test_transfer_trivial_cases():
    assert transfer_bounds("q_zero", m=1, h_G=5.0, h_betas=[0.7]) == pytest.approx(2.7)
    assert transfer_bounds("hbar_from_specializations", N=2, h1=1, D=2, H=0) == 5 * 16 * 4


# elements of B = Z[z, w] with w^2 = z (f = 1, so Q = 1)
b_elems = st.tuples(int_polys(nvars=1, max_deg=3, max_coeff=9), int_polys(nvars=1, max_deg=3, max_coeff=9)).map(
    lambda t: TowerElem(SQRTZ, [RatFunc(t[0]), RatFunc(t[1])]))
points = st.integers(-20, 20).filter(bool).flatmap(lambda u: st.sampled_from(all_points(S_SQRTZ, (u,))))


@settings(max_examples=120)
@given(b_elems, b_elems, points)
def test_homomorphism(a, b, pt):
    phi = lambda x: specialize_elem(S_SQRTZ, pt, x)
    assert phi(a + b) == phi(a) + phi(b)
    assert phi(a * b) == phi(a) * phi(b)


CUBIC = Tower(1, (IntPoly.zero(1), -z, -ONE))  # X^3 - zX - 1
S_CUBIC = SpecializationData(CUBIC, ONE)


@settings(max_examples=40)
@given(st.integers(-6, 6), st.data())
def test_homomorphism_cubic_tower(u, data):
    if S_CUBIC.H.evaluate([u]) == 0:
        return
    pt = data.draw(st.sampled_from(all_points(S_CUBIC, (u,))))
    coords = data.draw(st.lists(int_polys(nvars=1, max_deg=2, max_coeff=5), min_size=3, max_size=3))
    coords2 = data.draw(st.lists(int_polys(nvars=1, max_deg=2, max_coeff=5), min_size=3, max_size=3))
    a = TowerElem(CUBIC, [RatFunc(c) for c in coords])
    b = TowerElem(CUBIC, [RatFunc(c) for c in coords2])
    phi = lambda x: specialize_elem(S_CUBIC, pt, x)
    assert phi(a * b) == phi(a) * phi(b)


@settings(max_examples=40)
@given(st.integers(-30, 30).filter(bool))
def test_sum_of_root_heights(u):
    pts = all_points(S_SQRTZ, (u,))
    total = 0.0
    for pt in pts:
        total += abs_log_height(pt.w_image())
    bound = transfer_bounds("conjugate_sum", D=2, q=1, d0=1, h0=0.0, u_norm=abs(u))
    assert total <= bound + 1e-9


@settings(max_examples=60)
@given(b_elems, points)
def test_element_height_bound(a, pt):
    c = canonicalize(a)
    m = measures(c)
    img = specialize_elem(S_SQRTZ, pt, c)
    if img.is_zero():
        return
    bound = transfer_bounds("elem_height", D=2, q=1, d0=1, h0=0.0, u_norm=abs(pt.u[0]),
                            deg_bar=m.deg_bar, h_bar=m.h_bar)
    assert abs_log_height(img) <= bound + 1e-9


@settings(max_examples=60)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 9), st.sampled_from([2, 3, 5, 6, 7]))
def test_q_zero_bound(p0, p1, q, d):
    if math.gcd(math.gcd(p0, p1), q) != 1:
        return
    K = NumberField(IntPoly.from_univariate([-d, 0, 1]))
    beta = K.elem([Fraction(p0, q), Fraction(p1, q)])
    h_beta = abs_log_height(beta)  # both conjugates have the same height
    lhs = math.log(max(abs(q), abs(p0), abs(p1)))
    assert lhs <= transfer_bounds("q_zero", m=2, h_G=math.log(d), h_betas=[h_beta, h_beta]) + 1e-9


def test_constant_elements_keep_their_minimal_polynomial():
    T = Tower(1, (IntPoly.zero(1), IntPoly.const(-2, 1)))  # w = sqrt 2, constant in z
    S = SpecializationData(T, ONE)
    alpha = 1 + T.w()
    for u in (-3, 1, 5):
        for pt in all_points(S, (u,)):
            assert specialize_elem(S, pt, alpha).minimal_polynomial() == IntPoly.from_univariate([-1, -2, 1])


def test_canonical_rep_input():
    c = CanonicalRep((IntPoly.zero(1), ONE), ONE)
    pt = SpecPoint(S_SQRTZ, (9,), 2)
    assert specialize_elem(S_SQRTZ, pt, c) ** 2 == 9
