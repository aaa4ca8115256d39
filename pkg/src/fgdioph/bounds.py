"""Extended-range bounds stored as natural logarithms, and the bound evaluators.

Every evaluator returns a :class:`LogBound`.  Values are carried as intervals
(mpmath interval arithmetic at 128 bits); the reported ``ln_value`` is the
upper endpoint, so rounding never makes a bound smaller than it is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

import mpmath
from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import to_str

_iv = MPIntervalContext()
_iv.prec = 128


def _I(x):
    """Exact interval for an int, a Fraction-like, a decimal string or a float."""
    if isinstance(x, _iv.mpf):
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return _iv.mpf(x.numerator) / _iv.mpf(x.denominator)
    return _iv.mpf(x)


def _upper(x) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x._mpi_[1])


def _lower(x) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x._mpi_[0])


@total_ordering
class LogBound:
    """A positive quantity B represented by an enclosure of ln B."""

    __slots__ = ("_ln",)

    def __init__(self, ln):
        self._ln = _I(ln)

    @classmethod
    def from_value(cls, v) -> "LogBound":
        v = _I(v)
        if _lower(v) <= 0:
            raise ValueError("LogBound needs a positive value")
        return cls(_iv.log(v))

    @classmethod
    def from_ln_interval(cls, ln) -> "LogBound":
        return cls(ln)

    @property
    def ln_interval(self):
        return self._ln

    @property
    def ln_value(self) -> mpmath.mpf:
        return _upper(self._ln)

    @property
    def ln_lower(self) -> mpmath.mpf:
        return _lower(self._ln)

    def __mul__(self, other):
        if not isinstance(other, LogBound):
            other = LogBound.from_value(other)
        return LogBound(self._ln + other._ln)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogBound):
            other = LogBound.from_value(other)
        return LogBound(self._ln - other._ln)

    def __pow__(self, k):
        return LogBound(self._ln * _I(k))

    def __add__(self, other):
        if not isinstance(other, LogBound):
            other = LogBound.from_value(other)
        hi, lo = (self, other) if self.ln_value >= other.ln_value else (other, self)
        diff = lo._ln - hi._ln
        # ln(e^a + e^b) = a + log1p(e^(b-a)); the tail vanishes past 2^-200
        if _upper(diff) < -200 * math.log(2):
            tail = _iv.mpf([0, _upper(_iv.exp(diff))])
        else:
            tail = _iv.log(1 + _iv.exp(diff))
        return LogBound(hi._ln + tail)

    __radd__ = __add__

    def __eq__(self, other):
        if not isinstance(other, LogBound):
            return NotImplemented
        return self.ln_value == other.ln_value

    def __lt__(self, other):
        if not isinstance(other, LogBound):
            return NotImplemented
        return self.ln_value < other.ln_value

    def __hash__(self):
        return hash(self.ln_value)

    def dominates(self, value) -> bool:
        """value <= B with the bound rounded up and ln(value) rounded down."""
        v = _I(value)
        if _upper(v) <= 0:
            return True
        if _lower(v) <= 0:
            return True
        return _lower(_iv.log(v)) <= self.ln_value

    def to_decimal(self, digits: int = 17) -> str:
        return to_str(self.ln_value._mpf_, digits, min_fixed=1, max_fixed=0)

    def value_float(self) -> float:
        try:
            return math.exp(float(self.ln_value))
        except OverflowError:
            return math.inf

    def __repr__(self):
        return f"LogBound(ln={self.to_decimal()})"


@dataclass(frozen=True)
class OConstants:
    """Constants standing in for the unspecified absolute constants."""

    c_expr: float = 1.0
    c_rlogr: float = 1.0

    def __post_init__(self):
        if not (self.c_expr > 0 and self.c_rlogr > 0):
            raise ValueError("O-constants must be strictly positive")


def log_star(a) -> mpmath.mpf:
    """max(1, log a) with log* 0 = 1."""
    if a == 0:
        return mpmath.mpf(1)
    return max(mpmath.mpf(1), mpmath.log(a))


def _ilog_star(a):
    a = _I(a)
    if _upper(a) <= math.e or _lower(a) <= 0:
        if _upper(a) <= math.e:
            return _iv.mpf(1)
        return _iv.mpf([1, _upper(_iv.log(a))])
    lg = _iv.log(a)
    if _lower(lg) >= 1:
        return lg
    return _iv.mpf([1, _upper(lg)])


def _tower_exponent(base, c, r):
    """ln of base^(exp(c r)), as an interval."""
    return _iv.exp(_I(c) * _I(r)) * _iv.log(_I(base))


def _check_pos(**kw):
    for k, v in kw.items():
        if v is None or v < 1:
            raise ValueError(f"{k} must be >= 1")


def main_bounds(kind: str, n: int, d: int, h: float, r: int, m: int | None = None,
                C: OConstants = OConstants()) -> LogBound:
    """thue: ln B = n! (nd)^exp(cr) (h+1); hypersuper: m^3 (nd)^exp(cr) (h+1);
    st_alg: (nd)^exp(cr) (h+1); st_transc: ln of the m-bound (nd)^exp(cr)."""
    _check_pos(n=n, d=d, h=h, r=r)
    c = C.c_expr
    core = _iv.exp(_tower_exponent(n * d, c, r))  # (nd)^exp(cr)
    if kind == "thue":
        return LogBound(_I(math.factorial(n)) * core * (_I(h) + 1))
    if kind == "hypersuper":
        if m is None or m < 2:
            raise ValueError("hypersuper needs m >= 2")
        return LogBound(_I(m) ** 3 * core * (_I(h) + 1))
    if kind == "st_alg":
        return LogBound(core * (_I(h) + 1))
    if kind == "st_transc":
        return LogBound(_tower_exponent(n * d, c, r))
    raise ValueError(f"unknown kind {kind!r}")


def s_unit_c1(n: int, s: int, d_L: int):
    return (_I(250) * _I(n) ** 6 * _I(s) ** (2 * _I(s) + _I("3.5")) * _I(2) ** (7 * s + 27)
            * _iv.log(_I(2 * s)) * _I(d_L) ** (2 * s + 4) * _ilog_star(2 * d_L) ** 3)


def s_unit_c2(r_L: int, d_L: int):
    if r_L == 0:
        return _iv.mpf(0)
    if r_L == 1:
        return _I(1) / _I(d_L)
    return (_I(29) * _iv.e * _I(math.factorial(r_L)) * _I(r_L) * _iv.sqrt(_I(r_L - 1))
            * _iv.log(_I(d_L)))


FRIEDMAN_FLOOR = 0.2052


def s_unit_bound(n: int, s: int, d_L: int, r_L: int, h_L, R_L, R_S, P, Q, H1, H2) -> LogBound:
    """max(h(xi), h(eta)) <= c1 P R_S (1 + log* R_S / log* P) (c2 R_L + h_L/d_L log Q + 2 n d_L H1 + H2)."""
    if n < 3 or s < 1 or d_L < 1:
        raise ValueError("need n >= 3, s >= 1, d_L >= 1")
    if H1 < 1 or H2 < 1:
        raise ValueError("H1 and H2 are at least 1")
    if R_L < FRIEDMAN_FLOOR:
        raise ValueError(f"R_L below the lower bound {FRIEDMAN_FLOOR} for every number field")
    c1 = s_unit_c1(n, s, d_L)
    c2 = s_unit_c2(r_L, d_L)
    first = c1 * _I(P) * _I(R_S) * (1 + _ilog_star(R_S) / _ilog_star(P))
    second = c2 * _I(R_L) + _I(h_L) / _I(d_L) * _iv.log(_I(Q)) + 2 * _I(n) * _I(d_L) * _I(H1) + _I(H2)
    return LogBound(_iv.log(first) + _iv.log(second))


def ln_c3(n, s):
    return _I(14) * _I(n) ** 3 * _I(s) * _iv.log(_I(6 * n * s))


def ln_c4(n, s):
    return _I(212) * _I(n) ** 4 * _I(s) * _iv.log(_I(4 * n * s))


def ln_c5(n, s):
    return _I(40) * _I(n) * _I(s) * _iv.log(_I(10 * n * n * s))


def nf_bounds(kind: str, n: int, s: int, d_L: int, ln_disc, lnQ=0, lnP=0, h_hat=0,
              m: int | None = None) -> LogBound:
    """super: c3^(m^3) |D|^(2m^2n^2) Q^(3m^2n^2) e^(8m^2n^3 d_L h);
    hyper: c4 |D|^(8n^3) Q^(20n^3) e^(50n^4 d_L h); st: c5 |D|^(6n) P^(n^2) e^(11n d_L h)."""
    lnD, lQ, lP, hh = _I(ln_disc), _I(lnQ), _I(lnP), _I(h_hat)
    N = _I(n)
    if kind == "super":
        if m is None or m < 3 or n < 2:
            raise ValueError("super needs m >= 3 and n >= 2")
        M = _I(m)
        return LogBound(M ** 3 * ln_c3(n, s) + 2 * M ** 2 * N ** 2 * lnD + 3 * M ** 2 * N ** 2 * lQ
                        + 8 * M ** 2 * N ** 3 * _I(d_L) * hh)
    if kind == "hyper":
        if n < 3:
            raise ValueError("hyper needs n >= 3")
        return LogBound(ln_c4(n, s) + 8 * N ** 3 * lnD + 20 * N ** 3 * lQ + 50 * N ** 4 * _I(d_L) * hh)
    if kind == "st":
        if n < 2:
            raise ValueError("st needs n >= 2")
        return LogBound(ln_c5(n, s) + 6 * N * lnD + N ** 2 * lP + 11 * N * _I(d_L) * hh)
    raise ValueError(f"unknown kind {kind!r}")


REDUCTION_KINDS = (
    "D_cap", "minpoly_deg", "minpoly_h", "denominator_deg", "denominator_h",
    "special_f_deg", "special_f_h", "canonical_deg", "canonical_h",
    "rep_deg", "rep_h", "degree_xy",
)


def reduction_bounds(kind: str, C: OConstants = OConstants(), **p):
    """Bounds from the reduction to A_0[f^-1, w]; the integer D_cap or a LogBound."""
    c = C.c_expr
    if kind == "D_cap":
        return int(p["d0"]) ** int(p["rho"])
    if kind in ("minpoly_deg", "minpoly_h"):
        r, d0 = p["r"], p["d0"]
        base = _tower_exponent(2 * d0, c, r)
        if kind == "minpoly_h":
            base = base + _iv.log(_I(p["h0"]) + 1)
        return LogBound(base)
    if kind in ("denominator_deg", "denominator_h"):
        r, k, dss = p["r"], p["k"], p["d_ss"]
        base = _iv.log(_I(k + 1)) + _tower_exponent(2 * dss, c, r)
        if kind == "denominator_h":
            base = base + _iv.log(_I(p["h_ss"]) + 1)
        return LogBound(base)
    if kind in ("special_f_deg", "special_f_h", "degree_xy"):
        r, n, d = p["r"], p["n"], p["d"]
        base = _tower_exponent(n * d, c, r)
        if kind == "special_f_h":
            base = base + _iv.log(_I(p["h"]) + 1)
        return LogBound(base)
    if kind in ("canonical_deg", "canonical_h"):
        r, ds = p["r"], p["d_s"]
        base = _tower_exponent(2 * ds, c, r)
        if kind == "canonical_h":
            base = base + _iv.log(_I(p["h_s"]) + 1)
        return LogBound(base)
    if kind in ("rep_deg", "rep_h"):
        r, dh, hh = p["r"], p["d_hat"], p["h_hat"]
        ex = _iv.exp(_I(C.c_rlogr) * _I(r) * _ilog_star(r)) * _iv.log(_I(2 * dh))
        power = 1 if kind == "rep_deg" else r + 1
        return LogBound(ex + power * _iv.log(_I(hh) + 1))
    raise ValueError(f"unknown kind {kind!r}")
