"""Specializations z -> u in Z^q, w -> a root of the specialized minimal polynomial.

Each root w^(j)(u) is carried exactly as the generator of Q[X]/(g) for the
Q-irreducible factor g of F_u that vanishes at it.  Roots are numbered by
taking the factors in canonical order (degree, then coefficients) and the roots
of each factor in (real part, imaginary part) order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import sympy

from .bounds import LogBound, _I, _iv
from .forms import UniPoly, discriminant_det
from .ktower import CanonicalRep, Tower, TowerElem, canonicalize
from .mpoly import IntPoly
from .numfield import NFElem, NumberField

_X = sympy.Symbol("X")


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SpecializationData:
    tower: Tower
    f: IntPoly

    def __post_init__(self):
        if self.f.is_zero():
            raise ValueError("denominator f must be nonzero")
        if self.f.nvars != self.tower.q:
            raise ValueError("f must live in Z[z_1..z_q]")

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def D(self) -> int:
        return self.tower.D

    @property
    def d0_star(self) -> int:
        return max(max(c.degree() for c in self.tower.coeffs), 0)

    @property
    def d1_star(self) -> int:
        return max(self.d0_star, self.f.degree())

    @property
    def h0_star(self) -> float:
        return max(c.height() for c in self.tower.coeffs)

    @property
    def h1_star(self) -> float:
        return max(self.h0_star, self.f.height())

    def n_floor(self) -> int:
        """Smallest N for which an admissible u with |u| <= N is guaranteed."""
        return 2 * self.D * self.d0_star + 2 * (self.q + 1) * (self.d1_star + 1)

    @cached_property
    def H(self) -> IntPoly:
        return build_H(self)

    def F_at(self, u: Sequence[int]) -> list[int]:
        """Descending integer coefficients of F_u."""
        return [1] + [c.evaluate(list(u)) for c in self.tower.coeffs]


def build_H(S: SpecializationData) -> IntPoly:
    """H = disc(F) * F_D * f, with disc(F) := 1 when D = 1."""
    q = S.q
    FD = S.tower.coeffs[-1]
    if S.D == 1:
        return FD * S.f
    disc = discriminant_det(UniPoly([IntPoly.one(q)] + list(S.tower.coeffs)))
    return disc * FD * S.f


def find_admissible_u(S: SpecializationData, N: int, enforce_floor: bool = True) -> tuple[int, ...]:
    """Lexicographically first u in [-N, N]^q with H(u) != 0."""
    if enforce_floor and N < S.n_floor():
        raise AdmissibilityError(f"N = {N} is below the guaranteed floor {S.n_floor()}")
    H = S.H
    for u in itertools.product(range(-N, N + 1), repeat=S.q):
        if H.evaluate(list(u)) != 0:
            return tuple(u)
    raise AdmissibilityError(f"H vanishes on the whole box of radius {N}")


def _factor_specialized(coeffs: list[int]) -> list[IntPoly]:
    _, facs = sympy.factor_list(sympy.Poly(coeffs, _X, domain="ZZ"))
    out = []
    for f, e in facs:
        if e != 1:
            raise AdmissibilityError("specialized minimal polynomial has a repeated factor")
        out.append(IntPoly.from_univariate([int(c) for c in reversed(f.all_coeffs())]).normalized())
    out.sort(key=lambda g: (g.degree(), g.univariate_coeffs()))
    return out


@dataclass(frozen=True, eq=False)
class SpecPoint:
    data: SpecializationData
    u: tuple
    j: int  # 1-based root index
    factor: IntPoly = field(init=False)
    root_index: int = field(init=False)

    def __post_init__(self):
        u = tuple(int(x) for x in self.u)
        object.__setattr__(self, "u", u)
        if len(u) != self.data.q:
            raise ValueError(f"u must have length q = {self.data.q}")
        if self.data.H.evaluate(list(u)) == 0:
            raise AdmissibilityError(f"H vanishes at u = {u}")
        if not 1 <= self.j <= self.data.D:
            raise ValueError(f"root index j must be in 1..{self.data.D}")
        k = self.j - 1
        for g in _factor_specialized(self.data.F_at(u)):
            if k < g.degree():
                object.__setattr__(self, "factor", g)
                object.__setattr__(self, "root_index", k)
                return
            k -= g.degree()
        raise AssertionError("factor degrees do not add up to D")

    @cached_property
    def field(self) -> NumberField:
        return NumberField(self.factor)

    def w_image(self) -> NFElem:
        return self.field.theta()


def all_points(S: SpecializationData, u: Sequence[int]) -> list[SpecPoint]:
    return [SpecPoint(S, tuple(u), j) for j in range(1, S.D + 1)]


def specialize_elem(S: SpecializationData, pt: SpecPoint, c: CanonicalRep | TowerElem) -> NFElem:
    """sum P_i(u)/Q(u) * w^(j)(u)^i in Q(w^(j)(u))."""
    if isinstance(c, TowerElem):
        c = canonicalize(c)
    u = list(pt.u)
    Qu = c.Q.evaluate(u)
    if Qu == 0:
        raise AdmissibilityError("Q(u) = 0: the element does not lie in B")
    K = pt.field
    theta = pt.w_image()
    acc = K.rational(0)
    power = K.rational(1)
    for P in c.P:
        acc = acc + power * Fraction(P.evaluate(u), Qu)
        power = power * theta
    return acc


def _log_max1(x) -> float:
    return math.log(max(1, abs(x)))


def _log_pos(x) -> float:
    return math.log(max(1, x))


def transfer_bounds(kind: str, **p):
    """Bounds relating B to its specializations.

    field_disc (LogBound): D^(2D-1) ((d0*)^q e^(h0*) max(1,|u|)^(d0*))^(2D-2)
    elem_height: D^2 + q(D log d0* + log deg_bar) + D h0* + h_bar + (D d0* + deg_bar) log max(1,|u|)
    hbar_from_specializations: 5 N^4 (h1*+1)^2 + 2 D (h1*+1) H
    q_zero: 2 m^2 + (m-1) h(G) + sum h(beta_j)
    conjugate_sum: D + 1 + q log d0* + h0* + d0* log max(1,|u|)
    evaluation: q log deg g + h(g) + deg g log max(1,|u|)
    Degrees inside logarithms are clamped to at least 1.
    """
    if kind == "field_disc":
        D, q, d0, h0, u = p["D"], p["q"], p["d0"], p["h0"], p["u_norm"]
        ln = (_I(2 * D - 1) * _iv.log(_I(D)) + _I(2 * D - 2) * (
            _I(q) * _iv.log(_I(max(1, d0))) + _I(h0) + _I(d0) * _iv.log(_I(max(1, abs(u))))))
        return LogBound(ln)
    if kind == "elem_height":
        D, q, d0, h0, u = p["D"], p["q"], p["d0"], p["h0"], p["u_norm"]
        db, hb = p["deg_bar"], p["h_bar"]
        return (D * D + q * (D * _log_pos(d0) + _log_pos(db)) + D * h0 + hb
                + (D * d0 + db) * _log_max1(u))
    if kind == "hbar_from_specializations":
        N, h1, D, H = p["N"], p["h1"], p["D"], p["H"]
        return 5 * N ** 4 * (h1 + 1) ** 2 + 2 * D * (h1 + 1) * H
    if kind == "q_zero":
        m, hG, hb = p["m"], p["h_G"], p["h_betas"]
        return 2 * m * m + (m - 1) * hG + sum(hb)
    if kind == "conjugate_sum":
        D, q, d0, h0, u = p["D"], p["q"], p["d0"], p["h0"], p["u_norm"]
        return D + 1 + q * _log_pos(d0) + h0 + d0 * _log_max1(u)
    if kind == "evaluation":
        q, dg, hg, u = p["q"], p["deg_g"], p["h_g"], p["u_norm"]
        return q * _log_pos(dg) + hg + dg * _log_max1(u)
    raise ValueError(f"unknown kind {kind!r}")
