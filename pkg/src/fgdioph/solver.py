"""Exhaustive solvers over Z and the enumeration procedure over presented domains.

All searches are complete only relative to their caps.  Work is split into
contiguous chunks; the merged result is sorted, so the output does not depend
on the number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from sympy import integer_nthroot

from .fgdomain import DomainPresentation, enumerate_reps, is_in_ideal
from .forms import BinaryForm, UniPoly, discriminant_det
from .mpoly import IntPoly


class PreconditionError(ValueError):
    """Input violates a precondition (zero discriminant, delta = 0, ...)."""


def default_jobs() -> int:
    return os.cpu_count() or 1


def _chunked(fn: Callable, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


def _ranges(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    total = hi - lo
    parts = max(1, min(parts, total))
    return [(lo + total * i // parts, lo + total * (i + 1) // parts) for i in range(parts)]


# -- independent evaluator used for re-verification ----------------------------

def eval_form_direct(coeffs: Sequence[int], x: int, y: int) -> int:
    """sum a_i x^(n-i) y^i with explicit powers (no Horner)."""
    n = len(coeffs) - 1
    return sum(a * pow(x, n - i) * pow(y, i) for i, a in enumerate(coeffs))


def eval_poly_direct(coeffs: Sequence[int], x: int) -> int:
    n = len(coeffs) - 1
    return sum(a * pow(x, n - i) for i, a in enumerate(coeffs))


def _check_disc(F) -> None:
    if F.n >= 2 and discriminant_det(F) == 0:
        raise PreconditionError("discriminant of F is zero")


# -- Thue over Z ----------------------------------------------------------------

def _thue_chunk(args):
    coeffs, delta, box, xlo, xhi = args
    n = len(coeffs) - 1
    out = []
    for x in range(xlo, xhi):
        xp = [x ** (n - i) for i in range(n + 1)]
        for y in range(-box, box + 1):
            acc = 0
            yp = 1
            for i in range(n + 1):
                acc += coeffs[i] * xp[i] * yp
                yp *= y
            if acc == delta:
                out.append((x, y))
    return out


def thue_z_search(coeffs: Sequence[int], delta: int, box: int, jobs: int = 1) -> list[tuple[int, int]]:
    """All (x, y) with |x|, |y| <= box and F(x, y) = delta."""
    F = BinaryForm(tuple(int(c) for c in coeffs))
    if F.n < 3:
        raise PreconditionError("Thue equations need n >= 3")
    _check_disc(F)
    if delta == 0:
        raise PreconditionError("delta must be nonzero")
    if box < 0:
        raise PreconditionError("box must be nonnegative")
    tasks = [(F.coeffs, delta, box, a, b) for a, b in _ranges(-box, box + 1, 4 * jobs)]
    sols = sorted(s for part in _chunked(_thue_chunk, tasks, jobs) for s in part)
    for x, y in sols:
        assert eval_form_direct(F.coeffs, x, y) == delta
    return sols


# -- F(x) = delta y^m over Z --------------------------------------------------------

def exact_root(t: int, m: int) -> list[int]:
    """All integers y with y^m = t."""
    if t == 0:
        return [0]
    if t < 0:
        if m % 2 == 0:
            return []
        r, ok = integer_nthroot(-t, m)
        return [-int(r)] if ok else []
    r, ok = integer_nthroot(t, m)
    if not ok:
        return []
    r = int(r)
    return [-r, r] if m % 2 == 0 else [r]


def _power_chunk(args):
    coeffs, delta, ms, box, xlo, xhi, exclude_units = args
    out = []
    for x in range(xlo, xhi):
        acc = 0
        for c in coeffs:
            acc = acc * x + c
        if acc % delta:
            continue
        t = acc // delta
        for m in ms:
            for y in exact_root(t, m):
                if abs(y) > box or (exclude_units and y in (-1, 0, 1)):
                    continue
                out.append((x, y, m))
    return out


def _power_setup(coeffs, delta, box):
    F = UniPoly(tuple(int(c) for c in coeffs))
    _check_disc(F)
    if delta == 0:
        raise PreconditionError("delta must be nonzero")
    if box < 0:
        raise PreconditionError("box must be nonnegative")
    return F


def power_z_search(coeffs: Sequence[int], delta: int, m: int, box: int, jobs: int = 1) -> list[tuple[int, int]]:
    """All (x, y) with |x|, |y| <= box and F(x) = delta y^m."""
    F = _power_setup(coeffs, delta, box)
    if not ((m == 2 and F.n >= 3) or (m >= 3 and F.n >= 2)):
        raise PreconditionError("need m = 2 with n >= 3, or m >= 3 with n >= 2")
    tasks = [(F.coeffs, delta, (m,), box, a, b, False) for a, b in _ranges(-box, box + 1, 4 * jobs)]
    sols = sorted((x, y) for part in _chunked(_power_chunk, tasks, jobs) for x, y, _ in part)
    for x, y in sols:
        assert eval_poly_direct(F.coeffs, x) == delta * y ** m
    return sols


def st_z_search(coeffs: Sequence[int], delta: int, box: int, m_cap: int, jobs: int = 1) -> list[tuple[int, int, int]]:
    """All (x, y, m), 2 <= m <= m_cap, |x|, |y| <= box, y not in {0, 1, -1}, with F(x) = delta y^m."""
    F = _power_setup(coeffs, delta, box)
    if F.n < 2:
        raise PreconditionError("need n >= 2")
    if m_cap < 2:
        raise PreconditionError("m_cap must be at least 2")
    ms = tuple(range(2, m_cap + 1))
    tasks = [(F.coeffs, delta, ms, box, a, b, True) for a, b in _ranges(-box, box + 1, 4 * jobs)]
    sols = sorted(s for part in _chunked(_power_chunk, tasks, jobs) for s in part)
    for x, y, m in sols:
        assert eval_poly_direct(F.coeffs, x) == delta * y ** m
    return sols


# -- enumeration over a presented domain ----------------------------------------

def _nf_key(D: DomainPresentation, p: IntPoly):
    return frozenset(D.normal_form(p).items())


def _fg_chunk(args):
    D, coeffs, delta, pairs = args
    F = BinaryForm(coeffs)
    return [(ix, iy) for ix, iy, x, y in pairs if is_in_ideal(D, F(x, y) - delta)]


def dedup_modulo(D: DomainPresentation, pairs: Sequence[tuple[IntPoly, IntPoly]]) -> list[tuple[IntPoly, IntPoly]]:
    """Keep the first pair of each class modulo I (componentwise)."""
    kept: list = []
    for x, y in pairs:
        if not any(is_in_ideal(D, x - a) and is_in_ideal(D, y - b) for a, b in kept):
            kept.append((x, y))
    return kept


def enumerate_fg(D: DomainPresentation, coeffs: Sequence[IntPoly], delta: IntPoly, max_deg: int,
                 max_h: float, jobs: int = 1, full_scan: bool = False) -> list[tuple[IntPoly, IntPoly]]:
    """One representative pair per solution class of F(x, y) = delta among the capped pairs.

    With ``full_scan`` every pair is tested; otherwise one pair per pair of
    residue classes is tested, which gives the same answer because the test
    only depends on the classes.  The retained representative is always the
    first occurrence in enumeration order.
    """
    coeffs = tuple(coeffs)
    F = BinaryForm(coeffs)
    if F.n < 3:
        raise PreconditionError("Thue equations need n >= 3")
    if is_in_ideal(D, discriminant_det(F)):
        raise PreconditionError("discriminant of F lies in I")
    if is_in_ideal(D, delta):
        raise PreconditionError("delta lies in I")
    if max_deg < 0 or max_h < 0:
        raise PreconditionError("caps must be nonnegative")
    cands = list(enumerate_reps(D.r, max_deg, max_h))
    if full_scan:
        reps = list(range(len(cands)))
    else:
        seen: dict = {}
        for i, p in enumerate(cands):
            seen.setdefault(_nf_key(D, p), i)
        reps = sorted(seen.values())
    pairs = [(ix, iy, cands[ix], cands[iy]) for ix in reps for iy in reps]
    step = max(1, len(pairs) // (4 * max(jobs, 1)) + 1)
    tasks = [(D, coeffs, delta, pairs[i:i + step]) for i in range(0, len(pairs), step)]
    hits = sorted(h for part in _chunked(_fg_chunk, tasks, jobs) for h in part)
    found = [(cands[ix], cands[iy]) for ix, iy in hits]
    for x, y in found:
        assert is_in_ideal(D, eval_form_generic(coeffs, x, y) - delta)
    return dedup_modulo(D, found)


def eval_form_generic(coeffs, x, y):
    n = len(coeffs) - 1
    total = None
    for i, a in enumerate(coeffs):
        t = a * (x ** (n - i)) * (y ** i)
        total = t if total is None else total + t
    return total


@dataclass
class SearchProblem:
    kind: str  # thue_z | power_z | st_z | enumerate_fg
    data: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)

    def solve(self, jobs: int = 1) -> Any:
        d, c = self.data, self.caps
        if self.kind == "thue_z":
            return thue_z_search(d["coeffs"], d["delta"], c["box"], jobs)
        if self.kind == "power_z":
            return power_z_search(d["coeffs"], d["delta"], d["m"], c["box"], jobs)
        if self.kind == "st_z":
            return st_z_search(d["coeffs"], d["delta"], c["box"], c["m_cap"], jobs)
        if self.kind == "enumerate_fg":
            return enumerate_fg(d["domain"], d["coeffs"], d["delta"], c["max_deg"], c["max_h"], jobs)
        raise ValueError(f"unknown problem kind {self.kind!r}")
