"""Shared hypothesis strategies and small oracles."""

import sympy
from hypothesis import strategies as st

from fgdioph.mpoly import IntPoly

SYMS = sympy.symbols("z1:6")


def int_polys(nvars=2, max_deg=3, max_coeff=20, max_terms=5, nonzero=False):
    mono = st.tuples(*[st.integers(0, max_deg)] * nvars).filter(lambda e: sum(e) <= max_deg)
    coeff = st.integers(-max_coeff, max_coeff)
    terms = st.lists(st.tuples(mono, coeff), min_size=1 if nonzero else 0, max_size=max_terms)
    polys = terms.map(lambda ts: IntPoly(nvars, ts))
    if nonzero:
        polys = polys.filter(lambda p: not p.is_zero())
    return polys


def to_sympy(p: IntPoly, gens=None):
    gens = gens or SYMS[: max(p.nvars, 1)]
    if p.nvars == 0:
        return sympy.Poly(p.constant_value() if not p.is_zero() else 0, gens[0], domain="ZZ")
    return sympy.Poly.from_dict({e: c for e, c in p.terms()} or {(0,) * p.nvars: 0}, *gens, domain="ZZ")


def from_sympy(poly, nvars) -> IntPoly:
    return IntPoly(nvars, [(e, int(c)) for e, c in poly.terms()])
