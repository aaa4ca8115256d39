"""Valuations and heights on the rational function field k(z), k = algebraic closure of Q.

A valuation of k(z) is either the infinite one or belongs to a root of an
irreducible polynomial over Q.  Conjugate roots share the same order, so one
Q-irreducible factor of degree e stands for e valuations and is weighted by e.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .forms import BinaryForm, UniPoly, discriminant_det
from .ktower import RatFunc
from .mpoly import IntPoly, gcd_many, gcd_primitive, lcm

_Z = sympy.Symbol("z")


@dataclass(frozen=True, order=True)
class FFValuation:
    """kind "finite": the roots of ``poly`` (monic, Q-irreducible, descending
    Fraction coefficients); kind "infinite": the place at infinity."""

    kind: str
    poly: tuple = ()

    @property
    def weight(self) -> int:
        return len(self.poly) - 1 if self.kind == "finite" else 1

    def __str__(self):
        if self.kind == "infinite":
            return "inf"
        return str(sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in self.poly], _Z).as_expr())


@dataclass(frozen=True)
class FFHeightProfile:
    entries: tuple  # ((FFValuation, order), ...)

    def weighted_sum(self) -> int:
        return sum(v.weight * k for v, k in self.entries)

    def as_dict(self) -> dict:
        return {v: k for v, k in self.entries}


def _as_ratfunc(a) -> RatFunc:
    if isinstance(a, RatFunc):
        return a
    if isinstance(a, IntPoly):
        return RatFunc(a)
    if isinstance(a, (int, Fraction)):
        return RatFunc.from_int(a, 1)
    raise TypeError(f"cannot read {a!r} as an element of Q(z)")


def _univ(p: IntPoly) -> IntPoly:
    if p.nvars != 1:
        raise ValueError("function-field routines work over Q(z) with one variable")
    return p


def irreducible_factors(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Primitive irreducible factors over Z with positive leading coefficient."""
    _univ(p)
    if p.is_zero():
        raise ValueError("cannot factor zero")
    if p.degree() <= 0:
        return []
    _, facs = sympy.factor_list(sympy.Poly(p.univariate_coeffs()[::-1], _Z, domain="ZZ"))
    out = []
    for f, e in facs:
        q = IntPoly.from_univariate([int(c) for c in reversed(f.all_coeffs())])
        if q.degree() > 0:
            out.append((q.normalized(), e))
    out.sort(key=lambda fe: (fe[0].degree(), fe[0].univariate_coeffs()))
    return out


def _monic(p: IntPoly) -> tuple:
    c = p.univariate_coeffs()[::-1]
    return tuple(Fraction(x, c[0]) for x in c)


def valuation_vector(alpha) -> FFHeightProfile:
    a = _as_ratfunc(alpha)
    if a.is_zero():
        raise ValueError("valuation vector of zero is undefined")
    _univ(a.num)
    orders: dict = {}
    for p, sign in ((a.num, 1), (a.den, -1)):
        for f, e in irreducible_factors(p):
            v = FFValuation("finite", _monic(f))
            orders[v] = orders.get(v, 0) + sign * e
    entries = sorted((v, k) for v, k in orders.items() if k)
    inf = a.den.degree() - a.num.degree()
    if inf:
        entries.append((FFValuation("infinite"), inf))
    return FFHeightProfile(tuple(entries))


def height(args) -> int:
    """H(1, a) for a single element, the projective height H(a_1..a_l) otherwise."""
    if not isinstance(args, (list, tuple)):
        args = [args]
    elems = [_as_ratfunc(a) for a in args]
    if not elems:
        raise ValueError("height needs at least one argument")
    if len(elems) == 1:
        if elems[0].is_zero():
            return 0
        a = elems[0]
        return max(a.num.degree(), a.den.degree())
    nonzero = [a for a in elems if not a.is_zero()]
    if not nonzero:
        raise ValueError("height of the zero vector is undefined")
    L = IntPoly.one(1)
    for a in nonzero:
        L = lcm(L, a.den)
    polys = [a.num * L.exact_div(a.den) for a in nonzero]
    g = gcd_many(polys)
    return max(p.exact_div(g).degree() for p in polys)


def poly_height(coeffs, affine: bool = False) -> int:
    """Height of a polynomial over Q(z): projective height of its coefficients,
    or H(1, coefficients) when ``affine`` is set."""
    vals = [_as_ratfunc(c) for c in coeffs]
    if affine:
        vals = [RatFunc.from_int(1, 1)] + vals
    nonzero = [v for v in vals if not v.is_zero()]
    if len(nonzero) == 1:
        return 0
    return height(nonzero)


def genus_quadratic_cover(f: IntPoly) -> int:
    """Genus of the curve y^2 = f(z) for squarefree f."""
    _univ(f)
    if f.degree() < 1:
        raise ValueError("need deg f >= 1")
    g = gcd_primitive(f, f.derivative(0))
    if g.degree() > 0:
        raise ValueError("f is not squarefree")
    return (f.degree() - 1) // 2


@dataclass(frozen=True)
class FFBounds:
    x_bound: int
    y_bound: int
    m: int | None = None  # for "super" the y-bound is a bound for m*H(y)


def ff_bounds(kind: str, H_F: int, g: int, S: int, n: int, m: int | None = None) -> FFBounds:
    if min(H_F, g, S, n) < 0:
        raise ValueError("parameters must be nonnegative")
    if kind == "thue":
        if n < 3:
            raise ValueError("thue needs n >= 3")
        b = 89 * H_F + 212 * g + S - 1
        return FFBounds(b, b)
    if kind == "super":
        if m is None or m < 3 or n < 2:
            raise ValueError("super needs m >= 3 and n >= 2")
        return FFBounds(
            (6 * n + 18) * H_F + 6 * g + 2 * S,
            (6 * n * n + 18 * n + 1) * H_F + 6 * n * g + 2 * n * S,
            m,
        )
    if kind == "hyper":
        if n < 3:
            raise ValueError("hyper needs n >= 3")
        return FFBounds(
            (42 * n + 37) * H_F + 8 * g + 4 * S,
            (21 * n * n + 19 * n) * H_F + 4 * n * g + 2 * n * S,
        )
    raise ValueError(f"unknown kind {kind!r}")


# -- degree-bounded search ---------------------------------------------------

def box_polys(max_deg: int, max_coeff: int) -> list[IntPoly]:
    """All polynomials in Z[z] with degree <= max_deg and |coefficients| <= max_coeff."""
    rng = range(-max_coeff, max_coeff + 1)
    return [IntPoly.from_univariate(list(reversed(c))) for c in itertools.product(rng, repeat=max_deg + 1)]


def _lift(c) -> IntPoly:
    if isinstance(c, IntPoly):
        return _univ(c)
    return IntPoly.const(int(c), 1)


def _thue_chunk(args):
    lo, hi, xvals, yvals, coeff_vals, delta_vals = args
    n = len(coeff_vals) - 1
    npts = len(delta_vals)
    hits = []
    for ix in range(lo, hi):
        xv = xvals[ix]
        xp = [[1] * npts]
        for _ in range(n):
            xp.append([a * b for a, b in zip(xp[-1], xv)])
        for iy, yv in enumerate(yvals):
            ok = True
            for t in range(npts):
                acc = 0
                yp = 1
                for i in range(n + 1):
                    acc += coeff_vals[i][t] * xp[n - i][t] * yp
                    yp *= yv[t]
                if acc != delta_vals[t]:
                    ok = False
                    break
            if ok:
                hits.append((ix, iy))
    return hits


def _power_chunk(args):
    lo, hi, xvals, table, coeff_vals = args
    hits = []
    for ix in range(lo, hi):
        xv = xvals[ix]
        key = []
        for t, xt in enumerate(xv):
            acc = 0
            for c in coeff_vals:
                acc = acc * xt + c[t]
            key.append(acc)
        for iy in table.get(tuple(key), ()):
            hits.append((ix, iy))
    return hits


def _run_chunks(fn, make_args, total: int, jobs: int):
    jobs = max(1, jobs)
    nchunks = max(1, min(total, 4 * jobs))
    bounds = [(total * i // nchunks, total * (i + 1) // nchunks) for i in range(nchunks)]
    tasks = [make_args(lo, hi) for lo, hi in bounds]
    if jobs == 1:
        parts = [fn(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(fn, tasks))
    hits = [h for part in parts for h in part]
    hits.sort()
    return hits


def ff_search(kind: str, F, delta, m: int | None = None, max_deg: int = 1,
              max_coeff: int = 1, jobs: int | None = None) -> list[tuple[IntPoly, IntPoly]]:
    """Exhaustive search over a box of polynomial pairs (x, y) in Z[z].

    thue: F is a BinaryForm and we solve F(x, y) = delta.
    power: F is a UniPoly and we solve F(x) = delta * y^m.
    Candidates are compared on deg + 1 integer points, which decides equality
    of polynomials of that degree; hits are re-checked in Z[z].
    """
    if jobs is None:
        jobs = os.cpu_count() or 1
    delta = _lift(delta)
    if delta.is_zero():
        raise ValueError("delta must be nonzero")
    coeffs = [_lift(c) for c in F.coeffs]
    if kind == "thue":
        F = BinaryForm(coeffs)
    elif kind == "power":
        if m is None or m < 2:
            raise ValueError("power search needs m >= 2")
        F = UniPoly(coeffs)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if F.n >= 2 and discriminant_det(F).is_zero():
        raise ValueError("discriminant of F is zero")
    n = F.n
    cdeg = max(c.degree() for c in coeffs)
    if kind == "thue":
        top = max(cdeg + n * max_deg, delta.degree())
    else:
        top = max(cdeg + n * max_deg, delta.degree() + m * max_deg)
    pts = list(range(top + 1))
    cands = box_polys(max_deg, max_coeff)
    vals = [tuple(p.evaluate([t]) for t in pts) for p in cands]
    coeff_vals = [tuple(c.evaluate([t]) for t in pts) for c in coeffs]
    delta_vals = tuple(delta.evaluate([t]) for t in pts)
    if kind == "thue":
        hits = _run_chunks(_thue_chunk, lambda lo, hi: (lo, hi, vals, vals, coeff_vals, delta_vals),
                           len(cands), jobs)
    else:
        table: dict = {}
        for iy, yv in enumerate(vals):
            key = tuple(d * y ** m for d, y in zip(delta_vals, yv))
            table.setdefault(key, []).append(iy)
        hits = _run_chunks(_power_chunk, lambda lo, hi: (lo, hi, vals, table, coeff_vals),
                           len(cands), jobs)
    out = []
    for ix, iy in hits:
        x, y = cands[ix], cands[iy]
        lhs = F(x, y) if kind == "thue" else F(x)
        rhs = delta if kind == "thue" else delta * y ** m
        if lhs != rhs:
            raise AssertionError("point evaluation accepted a non-solution")
        out.append((x, y))
    return out


def _place_count(delta: IntPoly) -> int:
    """|S| for S = {infinity} and the zeros of delta (counted over the closure)."""
    return 1 + sum(f.degree() for f, _ in irreducible_factors(delta))


@dataclass(frozen=True)
class SolutionCheck:
    H_x: int
    H_y: int
    bounds: FFBounds | None
    chain_lhs: int | None
    chain_rhs: int | None
    ok: bool


def check_solution(kind: str, F, delta, x, y, m: int | None = None) -> SolutionCheck:
    """Compare a solution over Z[z] with the one-sided height bounds.

    S is {infinity} plus the zeros of delta, M = Q(z) so g = 0, and the
    height of F is the projective height of its coefficients.  For the power
    case the chain m H(y) <= H(F/delta) + n H(x) uses the affine height of
    F/delta, since y^m = F(x)/delta.
    """
    delta = _lift(delta)
    coeffs = [_lift(c) for c in F.coeffs]
    n = len(coeffs) - 1
    H_F = poly_height(coeffs)
    S = _place_count(delta)
    Hx, Hy = height(x), height(y)
    if kind == "thue":
        b = ff_bounds("thue", H_F, 0, S, n)
        return SolutionCheck(Hx, Hy, b, None, None, max(Hx, Hy) <= b.x_bound)
    if kind != "power" or m is None:
        raise ValueError("kind must be thue or power (with m)")
    scaled = [RatFunc(c, delta) for c in coeffs]
    lhs = m * Hy
    rhs = poly_height(scaled, affine=True) + n * Hx
    ok = lhs <= rhs
    b = None
    if m >= 3 and n >= 2:
        b = ff_bounds("super", H_F, 0, S, n, m)
        ok = ok and Hx <= b.x_bound and m * Hy <= b.y_bound
    elif m == 2 and n >= 3:
        b = ff_bounds("hyper", H_F, 0, S, n)
        ok = ok and Hx <= b.x_bound and Hy <= b.y_bound
    return SolutionCheck(Hx, Hy, b, lhs, rhs, ok)
