"""Finitely generated domains A = Z[X_1..X_r]/(f_1..f_t).

Equality of representatives is decided by ideal membership over Q.  For a prime
ideal I with I ∩ Z = (0) this agrees with membership over Z: if m*g lies in I
for a nonzero integer m then g lies in I.  The presentation is trusted to be of
that kind; only the cheap sanity checks below are run.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .groebner import groebner_basis, leading_monomial, normal_form, to_qpoly
from .mpoly import IntPoly, grlex_key


class PresentationError(ValueError):
    """The generators cannot present a domain of characteristic zero."""


@dataclass(frozen=True, eq=False)
class DomainPresentation:
    r: int
    generators: tuple[IntPoly, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise PresentationError("need at least one generator")
        for g in gens:
            if g.nvars != self.r:
                raise PresentationError(f"generator {g} does not have {self.r} variables")
        object.__setattr__(self, "generators", gens)
        basis = self.membership_basis
        if any(len(g) == 1 and leading_monomial(g) == (0,) * self.r for g in basis):
            raise PresentationError("ideal contains a nonzero constant")

    @cached_property
    def membership_basis(self):
        return groebner_basis(to_qpoly(g) for g in self.generators if not g.is_zero())

    @cached_property
    def _leads(self):
        return [leading_monomial(g) for g in self.membership_basis]

    @property
    def d0(self) -> int:
        return max([1] + [g.degree() for g in self.generators])

    @property
    def h0(self) -> float:
        return max([1.0] + [g.height() for g in self.generators])

    def normal_form(self, p: IntPoly):
        return normal_form(to_qpoly(p), self.membership_basis, self._leads)


def is_in_ideal(D: DomainPresentation, p: IntPoly) -> bool:
    if p.nvars != D.r:
        raise ValueError(f"polynomial has {p.nvars} variables, presentation has {D.r}")
    if p.is_zero():
        return True
    return not D.normal_form(p)


@dataclass(frozen=True)
class Representative:
    """A representative f of an element of A, or a pair (num, den) for K."""

    num: IntPoly
    den: IntPoly | None = None

    @property
    def is_pair(self) -> bool:
        return self.den is not None


def make_pair(D: DomainPresentation, num: IntPoly, den: IntPoly) -> Representative:
    if is_in_ideal(D, den):
        raise ValueError("denominator of a pair of representatives lies in I")
    return Representative(num, den)


def same_element(D: DomainPresentation, a: Representative, b: Representative) -> bool:
    if not a.is_pair and not b.is_pair:
        return is_in_ideal(D, a.num - b.num)
    one = IntPoly.one(D.r)
    an, ad = a.num, a.den if a.is_pair else one
    bn, bd = b.num, b.den if b.is_pair else one
    for den in (ad, bd):
        if is_in_ideal(D, den):
            raise ValueError("denominator of a pair of representatives lies in I")
    return is_in_ideal(D, an * bd - bn * ad)


def monomials_up_to(r: int, max_deg: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= max_deg, graded-lex ascending."""
    out = [e for e in itertools.product(range(max_deg + 1), repeat=r) if sum(e) <= max_deg]
    out.sort(key=grlex_key)
    return out


def coefficient_cap(max_h: float) -> int:
    return math.floor(math.exp(max_h) + 1e-12)


def count_reps(r: int, max_deg: int, max_h: float) -> int:
    return (2 * coefficient_cap(max_h) + 1) ** len(monomials_up_to(r, max_deg))


def enumerate_reps(r: int | DomainPresentation, max_deg: int, max_h: float) -> Iterator[IntPoly]:
    """Every polynomial with total degree <= max_deg and |coefficients| <= floor(e^max_h).

    The count is (2*cap + 1) ** #monomials, so keep the caps small.  Order is
    lexicographic in the coefficient vector (monomials in graded-lex order,
    coefficients from -cap to cap).
    """
    if isinstance(r, DomainPresentation):
        r = r.r
    if max_deg < 0 or max_h < 0:
        raise ValueError("caps must be nonnegative")
    monos = monomials_up_to(r, max_deg)
    cap = coefficient_cap(max_h)
    for coeffs in itertools.product(range(-cap, cap + 1), repeat=len(monos)):
        yield IntPoly._raw(r, {m: c for m, c in zip(monos, coeffs) if c})


def nth_rep(r: int, max_deg: int, max_h: float, index: int) -> IntPoly:
    """The index-th polynomial of :func:`enumerate_reps` without iterating."""
    monos = monomials_up_to(r, max_deg)
    cap = coefficient_cap(max_h)
    base = 2 * cap + 1
    digits = []
    for _ in monos:
        index, d = divmod(index, base)
        digits.append(d - cap)
    digits.reverse()
    return IntPoly._raw(r, {m: c for m, c in zip(monos, digits) if c})
