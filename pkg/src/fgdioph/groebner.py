"""Buchberger's algorithm over Q with graded reverse lexicographic order.

Polynomials are plain dicts ``{exponent tuple: Fraction}``.  The basis returned
by :func:`groebner_basis` is reduced, monic and sorted by leading monomial, so it
is reproducible for a fixed input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .mpoly import IntPoly

QPoly = dict  # exponent tuple -> Fraction


def grevlex_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def to_qpoly(p: IntPoly) -> QPoly:
    return {e: Fraction(c) for e, c in p._terms.items()}


def leading_monomial(f: QPoly) -> tuple[int, ...]:
    return max(f, key=grevlex_key)


def _monic(f: QPoly) -> QPoly:
    lc = f[leading_monomial(f)]
    return {e: c / lc for e, c in f.items()}


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled(f: QPoly, c: Fraction, shift: tuple, g: QPoly) -> None:
    """In place: f -= c * X^shift * g."""
    for e, gc in g.items():
        m = tuple(x + y for x, y in zip(e, shift))
        v = f.get(m, 0) - c * gc
        if v:
            f[m] = v
        else:
            f.pop(m, None)


def normal_form(f: QPoly, basis: list[QPoly], leads: list[tuple] | None = None) -> QPoly:
    """Fully reduced remainder of f modulo basis (every term reduced)."""
    if leads is None:
        leads = [leading_monomial(g) for g in basis]
    p = dict(f)
    rem: QPoly = {}
    while p:
        m = max(p, key=grevlex_key)
        c = p[m]
        for g, lm in zip(basis, leads):
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                _sub_scaled(p, c / g[lm], shift, g)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: QPoly, g: QPoly, lf: tuple, lg: tuple) -> QPoly:
    L = _lcm(lf, lg)
    out: QPoly = {}
    sf = tuple(x - y for x, y in zip(L, lf))
    sg = tuple(x - y for x, y in zip(L, lg))
    _sub_scaled(out, -1 / f[lf], sf, f)
    _sub_scaled(out, 1 / g[lg], sg, g)
    return out


def groebner_basis(polys: Iterable[QPoly]) -> list[QPoly]:
    G = [_monic(f) for f in polys if f]
    if not G:
        return []
    leads = [leading_monomial(g) for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        # normal selection strategy, ties broken by pair indices
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm(leads[ij[0]], leads[ij[1]])), ij))
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue  # coprime leading monomials
        L = _lcm(li, lj)
        # chain criterion
        if any(
            k not in (i, j)
            and _divides(leads[k], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        h = normal_form(_spoly(G[i], G[j], li, lj), G, leads)
        if h:
            h = _monic(h)
            G.append(h)
            leads.append(leading_monomial(h))
            k = len(G) - 1
            pairs.update((a, k) for a in range(k))
    return _reduce(G)


def _reduce(G: list[QPoly]) -> list[QPoly]:
    G = sorted(G, key=lambda g: grevlex_key(leading_monomial(g)))
    minimal: list[QPoly] = []
    for g in G:
        lg = leading_monomial(g)
        if any(_divides(leading_monomial(h), lg) for h in minimal):
            continue
        minimal = [h for h in minimal if not _divides(lg, leading_monomial(h))]
        minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        reduced.append(_monic(normal_form(g, others)))
    reduced.sort(key=lambda g: grevlex_key(leading_monomial(g)))
    return reduced
