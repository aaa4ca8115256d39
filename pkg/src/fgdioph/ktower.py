"""Arithmetic in K0 = Q(z_1..z_q) and K = K0[X]/(F) for a monic F over Z[z].

Elements of K are stored on the power basis 1, w, ..., w^(D-1).  The canonical
representation clears denominators to (P_0, ..., P_{D-1}; Q) in Z[z] with
gcd 1 and Q carrying a positive graded-lex leading coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .mpoly import IntPoly, gcd_many, gcd_primitive, lcm


class TowerError(ValueError):
    pass


class RatFunc:
    """Reduced quotient num/den of polynomials in Z[z_1..z_q]."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: IntPoly | None = None, *, _reduced=False):
        if den is None:
            den = IntPoly.one(num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("variable-count mismatch")
        if not _reduced:
            if num.is_zero():
                den = IntPoly.one(num.nvars)
            else:
                g = gcd_primitive(num, den)
                num, den = num.exact_div(g), den.exact_div(g)
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def from_int(cls, c, nvars: int) -> "RatFunc":
        if isinstance(c, Fraction):
            return cls(IntPoly.const(c.numerator, nvars), IntPoly.const(c.denominator, nvars))
        return cls(IntPoly.const(c, nvars), _reduced=True)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, IntPoly):
            return RatFunc(other, _reduced=True)
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_int(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFunc(IntPoly.zero(self.nvars), _reduced=True)
        # cross-cancel before multiplying keeps the gcds small
        g1 = gcd_primitive(self.num, other.den)
        g2 = gcd_primitive(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, u: Sequence[int]) -> Fraction:
        d = self.den.evaluate(u)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the given point")
        return Fraction(self.num.evaluate(u), d)

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True, eq=False)
class Tower:
    """K = K0(w) with w a root of X^D + F_1 X^(D-1) + ... + F_D, F_k in Z[z]."""

    q: int
    coeffs: tuple[IntPoly, ...]  # F_1 .. F_D

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise TowerError("minimal polynomial must have degree D >= 1")
        for c in coeffs:
            if c.nvars != self.q:
                raise TowerError(f"coefficient {c} does not have {self.q} variables")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def trivial(cls, q: int) -> "Tower":
        """D = 1 with w = 1 and minimal polynomial X - 1."""
        return cls(q, (IntPoly.const(-1, q),))

    @property
    def D(self) -> int:
        return len(self.coeffs)

    def minpoly_coeffs(self) -> list[IntPoly]:
        """a_0..a_D of X^D + F_1 X^(D-1) + ... (descending powers)."""
        return [IntPoly.one(self.q)] + list(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Tower) and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def zero(self) -> "TowerElem":
        return TowerElem(self, [RatFunc.from_int(0, self.q)] * self.D)

    def one(self) -> "TowerElem":
        return self.from_k0(1)

    def w(self) -> "TowerElem":
        if self.D == 1:
            return self.from_k0(-self.coeffs[0].constant_value() if self.coeffs[0].is_constant()
                                else RatFunc(-self.coeffs[0]))
        c = [RatFunc.from_int(0, self.q)] * self.D
        c[1] = RatFunc.from_int(1, self.q)
        return TowerElem(self, c)

    def z(self, i: int) -> "TowerElem":
        return self.from_k0(RatFunc(IntPoly.var(i, self.q)))

    def from_k0(self, x) -> "TowerElem":
        if not isinstance(x, RatFunc):
            if isinstance(x, IntPoly):
                x = RatFunc(x)
            else:
                x = RatFunc.from_int(x, self.q)
        c = [RatFunc.from_int(0, self.q)] * self.D
        c[0] = x
        return TowerElem(self, c)


def _reduce_mod(tower: Tower, prod: list[RatFunc]) -> list[RatFunc]:
    D = tower.D
    prod = list(prod)
    F = [RatFunc(c, _reduced=True) for c in tower.coeffs]
    for k in range(len(prod) - 1, D - 1, -1):
        c = prod[k]
        if c.is_zero():
            continue
        # w^k = -sum_{i=1..D} F_i w^(k-i)
        for i in range(1, D + 1):
            if not F[i - 1].is_zero():
                prod[k - i] = prod[k - i] - c * F[i - 1]
        prod[k] = RatFunc.from_int(0, tower.q)
    return prod[:D]


# -- univariate polynomials over K0 (ascending lists), for inversion ----------

def _strip(a: list[RatFunc]) -> list[RatFunc]:
    while a and a[-1].is_zero():
        a = a[:-1]
    return a


def _poly_divmod(a: list[RatFunc], b: list[RatFunc]):
    a = list(a)
    q = [RatFunc.from_int(0, b[0].nvars)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] = a[i + shift] - c * bi
        a = _strip(a)
    return _strip(q), a


def _poly_mul(a: list[RatFunc], b: list[RatFunc], nvars: int) -> list[RatFunc]:
    if not a or not b:
        return []
    out = [RatFunc.from_int(0, nvars)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _strip(out)


class TowerElem:
    __slots__ = ("tower", "coords")

    def __init__(self, tower: Tower, coords: Sequence[RatFunc]):
        if len(coords) != tower.D:
            raise TowerError(f"expected {tower.D} coordinates, got {len(coords)}")
        self.tower = tower
        self.coords = tuple(coords)

    def _lift(self, other):
        if isinstance(other, TowerElem):
            if other.tower != self.tower:
                raise TowerError("elements belong to different towers")
            return other
        if isinstance(other, (int, Fraction, IntPoly, RatFunc)):
            return self.tower.from_k0(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return TowerElem(self.tower, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(self.tower, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        t = self.tower
        prod = [RatFunc.from_int(0, t.q)] * (2 * t.D - 1)
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        return TowerElem(t, _reduce_mod(t, prod))

    __rmul__ = __mul__

    def inv(self) -> "TowerElem":
        """Inverse via the extended Euclidean algorithm over K0."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in K")
        t = self.tower
        q = t.q
        f = [RatFunc(c, _reduced=True) for c in reversed(t.minpoly_coeffs())]  # ascending
        a = _strip(list(self.coords))
        # invariant: r0 = s0 * a (mod f), r1 = s1 * a (mod f)
        r0, r1 = f, a
        s0, s1 = [], [RatFunc.from_int(1, q)]
        while len(r1) > 1:
            quo, rem = _poly_divmod(r0, r1)
            qs = _poly_mul(quo, s1, q)
            ns = [RatFunc.from_int(0, q)] * max(len(s0), len(qs))
            for i, x in enumerate(s0):
                ns[i] = ns[i] + x
            for i, x in enumerate(qs):
                ns[i] = ns[i] - x
            r0, r1 = r1, rem
            s0, s1 = s1, _strip(ns)
        if not r1:
            raise TowerError("element is not invertible: the minimal polynomial is reducible")
        c = r1[0].inv()
        coords = [x * c for x in s1] + [RatFunc.from_int(0, q)] * (t.D - len(s1))
        if len(coords) > t.D:
            coords = _reduce_mod(t, coords)
        return TowerElem(t, coords)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def exact_div(self, other):
        return self / other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = self.tower.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"TowerElem({[str(c) for c in self.coords]})"


def tower_arith(a: TowerElem, b: TowerElem | None, kind: str) -> TowerElem:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inv()
    raise ValueError(f"unknown tower operation {kind!r}")


@dataclass(frozen=True)
class CanonicalRep:
    P: tuple[IntPoly, ...]
    Q: IntPoly

    def to_elem(self, tower: Tower) -> TowerElem:
        return TowerElem(tower, [RatFunc(p, self.Q) for p in self.P])

    def to_json(self) -> dict:
        return {"P": [p.to_json() for p in self.P], "Q": self.Q.to_json()}


def canonicalize(a: TowerElem) -> CanonicalRep:
    q = a.tower.q
    Q = IntPoly.one(q)
    for c in a.coords:
        if not c.is_zero():
            Q = lcm(Q, c.den)
    P = [c.num * Q.exact_div(c.den) if not c.is_zero() else IntPoly.zero(q) for c in a.coords]
    g = gcd_many(P + [Q])
    if not (g.is_constant() and g.constant_value() == 1):
        P = [p.exact_div(g) for p in P]
        Q = Q.exact_div(g)
    if Q.leading_coefficient() < 0:
        P = [-p for p in P]
        Q = -Q
    return CanonicalRep(tuple(P), Q)


@dataclass(frozen=True)
class TowerMeasures:
    deg_bar: int
    h_bar: float


def measures(c: CanonicalRep) -> TowerMeasures:
    polys = [p for p in c.P if not p.is_zero()] + [c.Q]
    return TowerMeasures(max(p.degree() for p in polys), max(p.height() for p in polys))


def embed_representative(images: Sequence[TowerElem], num: IntPoly, den: IntPoly | None = None) -> TowerElem:
    """Image in K of num/den, given the images of X_1..X_r in K."""
    x = num.substitute(list(images))
    if not isinstance(x, TowerElem):
        x = images[0].tower.from_k0(x)
    if den is None:
        return x
    y = den.substitute(list(images))
    if not isinstance(y, TowerElem):
        y = images[0].tower.from_k0(y)
    return x / y
