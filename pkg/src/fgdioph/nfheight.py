"""Absolute logarithmic heights, quadratic discriminants, and discriminant /
regulator upper bounds for number fields."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import mpmath
import sympy

from .bounds import LogBound, _I, _ilog_star, _iv
from .mpoly import IntPoly
from .numfield import NFElem, sorted_roots

DEFAULT_DIGITS = 12
_X = sympy.Symbol("X")


def _sympy_poly(p: IntPoly):
    return sympy.Poly(p.univariate_coeffs()[::-1], _X, domain="ZZ")


def is_irreducible(p: IntPoly) -> bool:
    return p.degree() >= 1 and _sympy_poly(p).is_irreducible


def _mahler_irreducible(p: IntPoly, digits: int) -> mpmath.mpf:
    lc = abs(p.univariate_coeffs()[-1])
    dps = max(30, 2 * digits + 10)
    prev = None
    while True:
        with mpmath.workdps(dps):
            m = mpmath.mpf(lc)
            for r in sorted_roots(p, dps):
                m *= max(mpmath.mpf(1), abs(r))
        if prev is not None and abs(m - prev) <= abs(m) * mpmath.mpf(10) ** (-(digits + 8)):
            return m
        prev = m
        dps *= 2
        if dps > 2000:
            raise ArithmeticError("Mahler measure did not stabilize")


def mahler_measure(p: IntPoly, digits: int = DEFAULT_DIGITS) -> mpmath.mpf:
    """|lc| * prod max(1, |root|), multiplicative over the factorization."""
    if p.nvars != 1 or p.is_zero():
        raise ValueError("need a nonzero univariate polynomial")
    content, facs = sympy.factor_list(_sympy_poly(p))
    m = mpmath.mpf(abs(int(content)))
    for f, e in facs:
        q = IntPoly.from_univariate([int(c) for c in reversed(f.all_coeffs())])
        m *= _mahler_irreducible(q, digits) ** e
    return m


@dataclass(frozen=True)
class AlgNumber:
    """Root number ``index`` (roots sorted by real, then imaginary part) of ``minpoly``."""

    minpoly: IntPoly
    index: int = 0

    def __post_init__(self):
        p = self.minpoly
        if p.nvars != 1 or p.degree() < 1:
            raise ValueError("minimal polynomial must be univariate of degree >= 1")
        if p.content() != 1:
            raise ValueError("minimal polynomial is not primitive")
        if p.univariate_coeffs()[-1] < 0:
            raise ValueError("minimal polynomial needs a positive leading coefficient")
        if not is_irreducible(p):
            raise ValueError("minimal polynomial is reducible")
        if not 0 <= self.index < p.degree():
            raise ValueError("root index out of range")

    @classmethod
    def rational(cls, x) -> "AlgNumber":
        x = Fraction(x)
        return cls(IntPoly.from_univariate([-x.numerator, x.denominator]))

    @classmethod
    def from_elem(cls, a: NFElem, root_index: int) -> "AlgNumber":
        """The value of a at root ``root_index`` of its field's defining polynomial."""
        mp = a.minimal_polynomial()
        target = a.numeric(a.field.roots()[root_index])
        rts = sorted_roots(mp)
        best = min(range(len(rts)), key=lambda i: abs(rts[i] - target))
        return cls(mp, best)

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    @cached_property
    def value(self):
        return sorted_roots(self.minpoly)[self.index]

    def selector(self):
        """(center, radius) of a disc containing exactly this root."""
        rts = sorted_roots(self.minpoly)
        c = rts[self.index]
        if len(rts) == 1:
            return c, mpmath.mpf(1)
        sep = min(abs(c - r) for i, r in enumerate(rts) if i != self.index)
        return c, sep / 3


def abs_log_height(a, digits: int = DEFAULT_DIGITS) -> float:
    """h(a) = log M(minpoly) / deg."""
    if isinstance(a, (int, Fraction)):
        x = Fraction(a)
        if x == 0:
            return 0.0
        return math.log(max(abs(x.numerator), x.denominator))
    if isinstance(a, NFElem):
        mp = a.minimal_polynomial()
    elif isinstance(a, AlgNumber):
        mp = a.minpoly
    elif isinstance(a, IntPoly):
        mp = a
    else:
        raise TypeError(f"cannot take the height of {a!r}")
    if mp.degree() == 1 and mp.univariate_coeffs()[0] == 0:
        return 0.0
    return float(mpmath.log(mahler_measure(mp, digits)) / mp.degree())


def h_hat_rational(values: Sequence) -> float:
    """sum over places of log max(1, |v|_v) for a tuple of rationals."""
    vals = [Fraction(v) for v in values]
    den = 1
    for v in vals:
        den = math.lcm(den, v.denominator)
    top = max([den] + [abs(int(v * den)) for v in vals])
    return math.log(top)


def _is_squarefree(d: int) -> bool:
    return d != 0 and all(e == 1 for e in sympy.factorint(abs(d)).values())


def quadratic_field_disc(d: int) -> int:
    if d in (0, 1) or not _is_squarefree(d):
        raise ValueError(f"{d} is not a squarefree integer other than 0, 1")
    return d if d % 4 == 1 else 4 * d


def disc_bounds(kind: str, **p) -> LogBound:
    """extension: n^((2n-1) d_L) e^((2n^2-2) h(G)) |D_L|^[L(theta):L];
    composite: prod |D_Li|^(d_L/d_Li)."""
    if kind == "extension":
        n, d_L, h_G = p["n"], p["d_L"], p["h_G"]
        rel = p.get("rel_deg", n)
        ln_abs_disc = p.get("ln_abs_disc", 0)
        ln = (_I((2 * n - 1) * d_L) * _iv.log(_I(n)) + _I(2 * n * n - 2) * _I(h_G)
              + _I(rel) * _I(ln_abs_disc))
        return LogBound(ln)
    if kind == "composite":
        d_L = p["d_L"]
        ln = _iv.mpf(0)
        for d_i, ln_i in p["factors"]:
            if d_L % d_i:
                raise ValueError("factor degrees must divide d_L")
            ln = ln + _I(d_L // d_i) * _I(ln_i)
        return LogBound(ln)
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class RegulatorBounds:
    hLRL: LogBound
    R_S: LogBound


def regulator_bounds(abs_disc, d_L: int, Q, s: int) -> RegulatorBounds:
    """h_L R_L <= |D|^(1/2) (log*|D|)^(d_L-1);  R_S <= that * (log* Q)^s."""
    if isinstance(abs_disc, LogBound):
        ln_d = abs_disc.ln_interval
        lstar = _ilog_star(_iv.exp(ln_d))
    else:
        ln_d = _iv.log(_I(abs_disc))
        lstar = _ilog_star(abs_disc)
    base = ln_d / 2 + _I(d_L - 1) * _iv.log(lstar)
    return RegulatorBounds(LogBound(base), LogBound(base + _I(s) * _iv.log(_ilog_star(Q))))


@dataclass(frozen=True)
class NumberFieldDesc:
    d_L: int
    disc: int  # exact for quadratic fields, otherwise an upper bound for |disc|
    disc_exact: bool
    P: int = 2
    Q: int = 2
    s: int = 1
    r_L: int = 0

    def __post_init__(self):
        if self.P > self.Q:
            raise ValueError("need P <= Q")
        if self.s < 1 or self.s < self.r_L + 1:
            raise ValueError("S must contain all infinite places")
