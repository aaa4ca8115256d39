"""Exact arithmetic in Q(theta) = Q[X]/(g) for an irreducible integer polynomial g."""

from __future__ import annotations

from fractions import Fraction
from math import lcm as ilcm, gcd as igcd
from typing import Sequence

import mpmath

from .mpoly import IntPoly


def _strip(a: list) -> list:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[i + k] -= c * x
        a = _strip(a)
    return _strip(q), a


def _mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def primitive_from_fractions(coeffs: Sequence[Fraction]) -> IntPoly:
    """Ascending rational coefficients to a primitive IntPoly with positive leading coefficient."""
    coeffs = _strip([Fraction(c) for c in coeffs])
    if not coeffs:
        return IntPoly.zero(1)
    den = 1
    for c in coeffs:
        den = ilcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly.from_univariate(ints)


class NumberField:
    """Q[X]/(g); g is trusted to be irreducible over Q."""

    def __init__(self, g: IntPoly):
        if g.nvars != 1 or g.degree() < 1:
            raise ValueError("defining polynomial must be univariate of degree >= 1")
        self.g = g.primitive_part().normalized()
        self._mod = [Fraction(c) for c in self.g.univariate_coeffs()]
        self.degree = self.g.degree()
        self._roots = {}

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def __repr__(self):
        return f"NumberField({self.g})"

    def elem(self, coords: Sequence) -> "NFElem":
        c = [Fraction(x) for x in coords]
        if len(c) > self.degree:
            c = self._reduce(c)
        c += [Fraction(0)] * (self.degree - len(c))
        return NFElem(self, tuple(c))

    def rational(self, x) -> "NFElem":
        return self.elem([x])

    def theta(self) -> "NFElem":
        if self.degree == 1:
            # theta is the rational root of g
            return self.rational(-self._mod[0] / self._mod[1])
        return self.elem([0, 1])

    def _reduce(self, c: list) -> list:
        _, r = _divmod(_strip(list(c)), self._mod)
        return r

    def roots(self, dps: int = 50) -> list:
        """Complex roots of g, sorted by (real part, imaginary part)."""
        if dps not in self._roots:
            self._roots[dps] = sorted_roots(self.g, dps)
        return self._roots[dps]


def sorted_roots(g: IntPoly, dps: int = 50) -> list:
    coeffs = g.univariate_coeffs()[::-1]
    with mpmath.workdps(dps + 20):
        rts = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps + 40)
        if not isinstance(rts, list):
            rts = [rts]
        rts = [mpmath.mpc(r) for r in rts]
        scale = mpmath.mpf(10) ** (dps // 2)
        rts.sort(key=lambda r: (mpmath.nint(r.real * scale), r.imag))
    return rts


class NFElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords

    def _lift(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return NFElem(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.coords))

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
        return self.field.elem(_mul(_strip(list(self.coords)), _strip(list(other.coords))))

    __rmul__ = __mul__

    def inv(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(self.field._mod), _strip(list(self.coords))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            qs = _mul(q, s1)
            ns = [Fraction(0)] * max(len(s0), len(qs))
            for i, x in enumerate(s0):
                ns[i] += x
            for i, x in enumerate(qs):
                ns[i] -= x
            r0, r1, s0, s1 = r1, r, s1, _strip(ns)
        if not r1:
            raise ValueError("defining polynomial is reducible")
        return self.field.elem([x / r1[0] for x in s1])

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
        out = self.field.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.field.g, self.coords))

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def minimal_polynomial(self) -> IntPoly:
        """Primitive integer minimal polynomial with positive leading coefficient."""
        d = self.field.degree
        powers = [self.field.rational(1).coords]
        p = self.field.rational(1)
        for k in range(1, d + 1):
            p = p * self
            powers.append(p.coords)
            rel = _first_relation(powers)
            if rel is not None:
                return primitive_from_fractions(rel)
        raise AssertionError("no linear relation among powers")

    def numeric(self, root, dps: int = 50):
        with mpmath.workdps(dps):
            acc = mpmath.mpc(0)
            for c in reversed(self.coords):
                acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
            return acc

    def __repr__(self):
        return f"NFElem({[str(c) for c in self.coords]} mod {self.field.g})"


def _first_relation(vectors: list) -> list | None:
    """A nonzero rational relation sum c_i v_i = 0 with c_last != 0, else None."""
    k = len(vectors)
    d = len(vectors[0])
    # rows = coordinates, columns = vectors
    M = [[Fraction(vectors[j][i]) for j in range(k)] for i in range(d)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((i for i in range(row, d) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for i in range(d):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
    if k - 1 in pivots:
        return None
    sol = [Fraction(0)] * k
    sol[k - 1] = Fraction(1)
    for r, col in enumerate(pivots):
        sol[col] = -M[r][k - 1]
    return sol
