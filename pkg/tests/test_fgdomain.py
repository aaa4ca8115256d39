import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fgdioph.fgdomain import (DomainPresentation, PresentationError, Representative, count_reps,
                              enumerate_reps, is_in_ideal, make_pair, nth_rep, same_element)
from fgdioph.mpoly import IntPoly
from strategies import SYMS, int_polys, to_sympy

X1, X2 = IntPoly.var(0, 2), IntPoly.var(1, 2)
ONE = IntPoly.one(2)
LAURENT = DomainPresentation(2, (X1 * X2 - ONE,))
x = IntPoly.var(0, 1)
SQRT2 = DomainPresentation(1, (x ** 2 - 2,))


@pytest.mark.parametrize("D, p, expected", [
    (LAURENT, X1 ** 2 * X2 - X1, True),
    (LAURENT, X1 + X2, False),
    (SQRT2, x ** 4 - 4 * x ** 2 + 4, True),
])
def test_membership_examples(D, p, expected):
    assert is_in_ideal(D, p) is expected


def test_same_element_examples():
    assert same_element(LAURENT, Representative(X1), Representative(X1 + (X1 * X2 - ONE)))
    assert same_element(LAURENT, make_pair(LAURENT, X1, ONE), make_pair(LAURENT, ONE, X2))
    assert not same_element(SQRT2, Representative(x), Representative(-x))


def test_pair_with_denominator_in_ideal_rejected():
    with pytest.raises(ValueError):
        make_pair(LAURENT, ONE, X1 * X2 - ONE)


def test_unit_ideal_rejected():
    with pytest.raises(PresentationError):
        DomainPresentation(1, (x, x - 1))


@pytest.mark.parametrize("r, d, h, count", [(2, 1, math.log(2), 125), (1, 0, 0, 3), (3, 2, 0, 3 ** 10)])
def test_count_reps(r, d, h, count):
    assert count_reps(r, d, h) == count
    if count < 10 ** 4:
        assert sum(1 for _ in enumerate_reps(r, d, h)) == count


def test_constants_only():
    assert [p.constant_value() if not p.is_zero() else 0 for p in enumerate_reps(1, 0, 0)] == [-1, 0, 1]


def test_count_monotone_in_caps():
    counts = [[count_reps(2, d, h) for h in (0, 0.7, 1.1, 1.4)] for d in range(3)]
    for row in counts:
        assert row == sorted(row)
    for col in zip(*counts):
        assert list(col) == sorted(col)


@given(st.integers(0, 124))
def test_nth_rep_matches_stream(i):
    assert nth_rep(2, 1, math.log(2), i) == list(enumerate_reps(2, 1, math.log(2)))[i]


IDEALS = [
    (X1 * X2 - ONE,),
    (X1 ** 2 - 2,),
    (X1 ** 2 + X2 ** 2 - ONE,),
    (X2 ** 2 - X1 ** 3 - X1,),
]


@settings(max_examples=60)
@given(st.sampled_from(IDEALS), int_polys(nvars=2, max_deg=4, max_coeff=9))
def test_membership_matches_sympy_groebner(gens, p):
    D = DomainPresentation(2, gens)
    G = sympy.groebner([to_sympy(g).as_expr() for g in gens], *SYMS[:2], order="grevlex", domain="QQ")
    _, rem = G.reduce(to_sympy(p).as_expr())
    assert is_in_ideal(D, p) == (sympy.expand(rem) == 0)


@settings(max_examples=60)
@given(st.sampled_from(IDEALS), int_polys(nvars=2, max_deg=2, max_coeff=5),
       int_polys(nvars=2, max_deg=2, max_coeff=5), int_polys(nvars=2, max_deg=2, max_coeff=5))
def test_ideal_closure(gens, h, a, b):
    D = DomainPresentation(2, gens)
    g = gens[0]
    assert is_in_ideal(D, g)
    p, q = a * g, b * g
    assert is_in_ideal(D, p) and is_in_ideal(D, q)
    assert is_in_ideal(D, p + q) and is_in_ideal(D, h * p)


@settings(max_examples=60)
@given(st.sampled_from(IDEALS), int_polys(nvars=2, max_deg=2, max_coeff=3),
       int_polys(nvars=2, max_deg=1, max_coeff=3), int_polys(nvars=2, max_deg=1, max_coeff=3))
def test_same_element_is_equivalence(gens, a, s, t):
    D = DomainPresentation(2, gens)
    g = gens[0]
    ra, rb, rc = Representative(a), Representative(a + s * g), Representative(a + s * g + t * g)
    assert same_element(D, ra, ra)
    assert same_element(D, ra, rb) and same_element(D, rb, ra)
    assert same_element(D, rb, rc) and same_element(D, ra, rc)
    other = Representative(a + ONE)
    assert not same_element(D, ra, other)
