"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

An :class:`IntPoly` maps exponent vectors to nonzero Python ints.  Terms are
iterated in graded-lexicographic order (highest first), which is also the order
used for serialization and for the sign normalization of gcds.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


def _packing(nvars: int, base: int):
    """Encode exponent vectors as ints: total degree first, then the digits.

    Valid while every exponent and the total degree stay below ``base``; the
    encoding is additive and its integer order is graded-lex.
    """
    top = base ** nvars
    weights = [base ** (nvars - 1 - i) for i in range(nvars)]

    def enc(e):
        k = 0
        for x in e:
            k = k * base + x
        return sum(e) * top + k

    def dec(k):
        k %= top
        out = []
        for w in weights:
            d, k = divmod(k, w)
            out.append(d)
        return tuple(out)

    return enc, dec


# Large products go through one big-integer multiplication (Kronecker
# substitution z_i -> 2^(K * stride_i)) when the dense layout is not too sparse.
_KRONECKER_MIN_WORK = 400
_KRONECKER_MAX_FILL = 16


def _kronecker_layout(nvars, degs):
    strides = [1] * nvars
    for i in range(nvars - 2, -1, -1):
        strides[i] = strides[i + 1] * (degs[i + 1] + 1)
    slots = strides[0] * (degs[0] + 1) if nvars else 1
    return strides, slots


def _var_degrees(terms, nvars):
    degs = [0] * nvars
    for e in terms:
        for i, x in enumerate(e):
            if x > degs[i]:
                degs[i] = x
    return degs


def _kronecker_pack(terms, strides, nbytes, slots):
    pos = bytearray(slots * nbytes)
    neg = bytearray(slots * nbytes)
    for e, c in terms.items():
        idx = sum(x * s for x, s in zip(e, strides)) * nbytes
        if c > 0:
            pos[idx:idx + nbytes] = c.to_bytes(nbytes, "little")
        else:
            neg[idx:idx + nbytes] = (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker_unpack(value, strides, nbytes, slots):
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * slots, "little")
    value += offset
    if value < 0 or value.bit_length() > 8 * nbytes * slots:
        return None
    raw = value.to_bytes(slots * nbytes, "little")
    pattern = half.to_bytes(nbytes, "little")
    out = {}
    for i in range(slots):
        chunk = raw[i * nbytes:(i + 1) * nbytes]
        if chunk == pattern:
            continue
        e = []
        rest = i
        for s in strides:
            d, rest = divmod(rest, s)
            e.append(d)
        out[tuple(e)] = int.from_bytes(chunk, "little") - half
    return out


def _kronecker_mul(nvars, a, b):
    da, db = _var_degrees(a, nvars), _var_degrees(b, nvars)
    degs = [x + y for x, y in zip(da, db)]
    strides, slots = _kronecker_layout(nvars, degs)
    if slots > _KRONECKER_MAX_FILL * len(a) * len(b):
        return None
    bound = max(map(abs, a.values())) * max(map(abs, b.values())) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2) // 8 + 1
    va = _kronecker_pack(a, strides, nbytes, slots)
    vb = _kronecker_pack(b, strides, nbytes, slots)
    return _kronecker_unpack(va * vb, strides, nbytes, slots)


class NotDivisible(ArithmeticError):
    """Raised by :meth:`IntPoly.exact_div` when the quotient is not in Z[z]."""


@dataclass(frozen=True)
class Measure:
    deg: int
    h: float
    len: int
    size: float
    is_zero: bool


class IntPoly:
    """Immutable element of Z[X_1, ..., X_nvars]."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], int] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if not isinstance(coeff, int):
                if isinstance(coeff, str):
                    coeff = int(coeff)
                elif int(coeff) == coeff:
                    coeff = int(coeff)
                else:
                    raise TypeError(f"non-integer coefficient {coeff!r}")
            acc[exps] = acc.get(exps, 0) + coeff
        self.nvars = nvars
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "IntPoly":
        # trusted constructor: terms already clean (no zero coefficients)
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "IntPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c: int, nvars: int) -> "IntPoly":
        c = int(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "IntPoly":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "IntPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int], nvars: int = 1, var: int = 0) -> "IntPoly":
        """Build sum coeffs[k] * X_var^k (ascending coefficient list)."""
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[var] = k
                terms[tuple(e)] = int(c)
        return cls._raw(nvars, terms)

    # -- inspection ---------------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficients(self) -> list[int]:
        return [c for _, c in self.terms()]

    def coeff(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, 0)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def leading_coefficient(self) -> int:
        return self.leading_term()[1]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def variables(self) -> list[int]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def height(self) -> float:
        """log max |coefficient|, with h(0) := 0."""
        if not self._terms:
            return 0.0
        return math.log(max(abs(c) for c in self._terms.values()))

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    def length(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def size(self) -> float:
        if not self._terms:
            return 1.0
        return max(1.0, float(self.degree()), self.height())

    def measure(self) -> Measure:
        return Measure(self.degree(), self.height(), self.length(), self.size(), self.is_zero())

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return IntPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return IntPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return IntPoly.zero(self.nvars)
            return IntPoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return IntPoly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        if len(a) * len(b) >= _KRONECKER_MIN_WORK:
            res = _kronecker_mul(self.nvars, a, b)
            if res is not None:
                return IntPoly._raw(self.nvars, res)
        out: dict = {}
        get = out.get
        if self.nvars == 1:
            for (ea,), ca in a.items():
                for (eb,), cb in b.items():
                    k = (ea + eb,)
                    out[k] = get(k, 0) + ca * cb
            return IntPoly._raw(self.nvars, {e: c for e, c in out.items() if c})
        enc, dec = _packing(self.nvars, self.degree() + other.degree() + 1)
        pb = [(enc(e), c) for e, c in b.items()]
        for ea, ca in a.items():
            ka = enc(ea)
            for kb, cb in pb:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return IntPoly._raw(self.nvars, {dec(k): c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = IntPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def exact_div(self, other) -> "IntPoly":
        """Quotient q with self == q * other; raises NotDivisible otherwise."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero polynomial")
            out = {}
            for e, c in self._terms.items():
                q, r = divmod(c, other)
                if r:
                    raise NotDivisible(f"coefficient {c} not divisible by {other}")
                out[e] = q
            return IntPoly._raw(self.nvars, out)
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self.exact_div(other.constant_value())
        lt_e, lt_c = other.leading_term()
        if self.is_zero():
            return IntPoly.zero(self.nvars)
        # packed keys add like exponent vectors and sort like graded-lex
        enc, dec = _packing(self.nvars, self.degree() + other.degree() + 1)
        lt_k = enc(lt_e)
        dterms = [(enc(e), c) for e, c in other._terms.items()]
        rem = {enc(e): c for e, c in self._terms.items()}
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot = {}
        while rem:
            k = -heapq.heappop(heap)
            c = rem.get(k)
            if c is None:
                continue
            e = dec(k)
            if any(x < y for x, y in zip(e, lt_e)):
                raise NotDivisible("leading monomial not divisible")
            qc, r = divmod(c, lt_c)
            if r:
                raise NotDivisible("leading coefficient not divisible")
            qk = k - lt_k
            quot[qk] = qc
            for dk, dc in dterms:
                m = qk + dk
                v = rem.get(m, 0) - qc * dc
                if v:
                    if m not in rem:
                        heapq.heappush(heap, -m)
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return IntPoly._raw(self.nvars, {dec(k): c for k, c in quot.items()})

    def divides(self, other: "IntPoly") -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    def primitive_part(self) -> "IntPoly":
        c = self.content()
        return self.exact_div(c) if c > 1 else self

    def normalized(self) -> "IntPoly":
        """Sign-normalize so the graded-lex leading coefficient is positive."""
        if self._terms and self.leading_coefficient() < 0:
            return -self
        return self

    def derivative(self, i: int) -> "IntPoly":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return IntPoly._raw(self.nvars, out)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, u: Sequence[int]) -> int:
        if len(u) != self.nvars:
            raise ValueError(f"need {self.nvars} values, got {len(u)}")
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(u, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def substitute(self, values: Sequence) -> object:
        """Evaluate with ring elements (IntPoly, TowerElem, Fraction, ...) substituted.

        ``values[i]`` replaces X_i; the result lives in the ring of the values.
        """
        if len(values) != self.nvars:
            raise ValueError(f"need {self.nvars} values, got {len(values)}")
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = values[i] ** k
            return cache[key]

        total = None
        for e, c in self.terms():
            t = None
            for i, k in enumerate(e):
                if k:
                    t = power(i, k) if t is None else t * power(i, k)
            t = c if t is None else t * c
            total = t if total is None else total + t
        if total is None:
            return 0 * values[0] if values else 0
        return total

    def with_nvars(self, nvars: int, positions: Sequence[int] | None = None) -> "IntPoly":
        """Re-embed into a ring with ``nvars`` variables; X_i goes to X_{positions[i]}."""
        if positions is None:
            positions = range(self.nvars)
        positions = list(positions)
        out = {}
        for e, c in self._terms.items():
            new = [0] * nvars
            for i, k in enumerate(e):
                if k:
                    new[positions[i]] += k
            out[tuple(new)] = c
        return IntPoly._raw(nvars, out)

    def univariate_coeffs(self) -> list[int]:
        """Ascending coefficient list of a univariate polynomial."""
        if self.nvars != 1:
            raise ValueError("not a univariate polynomial")
        if not self._terms:
            return []
        out = [0] * (self.degree() + 1)
        for (k,), c in self._terms.items():
            out[k] = c
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data: list, nvars: int | None = None) -> "IntPoly":
        if nvars is None:
            if not data:
                raise ValueError("cannot infer nvars from an empty term list")
            nvars = len(data[0][0])
        return cls(nvars, [(tuple(e), int(c)) for e, c in data])

    def __repr__(self):
        return f"IntPoly({self.nvars}, {dict(self.terms())!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["z"] if self.nvars == 1 else [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.terms():
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


# -- gcd over Z[z_1..z_q] ---------------------------------------------------


def _split(p: IntPoly, v: int) -> dict[int, IntPoly]:
    """View p as a polynomial in X_v with coefficients not involving X_v."""
    out: dict[int, dict] = {}
    for e, c in p._terms.items():
        out.setdefault(e[v], {})[e[:v] + (0,) + e[v + 1:]] = c
    return {k: IntPoly._raw(p.nvars, t) for k, t in out.items()}


def _join(parts: Mapping[int, IntPoly], v: int, nvars: int) -> IntPoly:
    out = {}
    for k, q in parts.items():
        for e, c in q._terms.items():
            out[e[:v] + (e[v] + k,) + e[v + 1:]] = c
    return IntPoly._raw(nvars, out)


def _content_in(p: IntPoly, v: int) -> IntPoly:
    g = None
    for q in _split(p, v).values():
        g = q if g is None else _gcd(g, q)
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
    return g


def _prem(a: IntPoly, b: IntPoly, v: int) -> IntPoly:
    """Pseudo-remainder of a by b in X_v (up to a unit power of lc(b))."""
    A = _split(a, v)
    B = _split(b, v)
    db = max(B)
    lcb = B[db]
    zero = IntPoly.zero(a.nvars)
    while A and max(A) >= db:
        k = max(A)
        c = A[k]
        A = {i: r * lcb for i, r in A.items()}
        for j, bj in B.items():
            idx = j + k - db
            A[idx] = A.get(idx, zero) - c * bj
        A = {i: r for i, r in A.items() if not r.is_zero()}
    return _join(A, v, a.nvars)


def _gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    used = sorted(set(p.variables()) | set(q.variables()))
    if not used:
        return IntPoly.const(math.gcd(p.constant_value(), q.constant_value()), p.nvars)
    v = used[-1]
    if p.degree_in(v) == 0:
        return _gcd(p, _content_in(q, v))
    if q.degree_in(v) == 0:
        return _gcd(_content_in(p, v), q)
    cp, cq = _content_in(p, v), _content_in(q, v)
    a, b = p.exact_div(cp), q.exact_div(cq)
    c = _gcd(cp, cq)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b, v)
        a = b
        if r.is_zero():
            break
        if r.degree_in(v) == 0:
            return c
        b = r.exact_div(_content_in(r, v))
    return c * a.exact_div(_content_in(a, v))


def gcd_primitive(p: IntPoly, q: IntPoly) -> IntPoly:
    """gcd in Z[z_1..z_q] with positive graded-lex leading coefficient."""
    if p.nvars != q.nvars:
        raise ValueError(f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    return _gcd(p, q).normalized()


def gcd_many(polys: Iterable[IntPoly]) -> IntPoly:
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p if g is None else _gcd(g, p)
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
    if g is None:
        raise ValueError("gcd of zero polynomials is undefined")
    return g.normalized()


def lcm(p: IntPoly, q: IntPoly) -> IntPoly:
    if p.is_zero() or q.is_zero():
        return IntPoly.zero(p.nvars)
    return (p * q).exact_div(gcd_primitive(p, q)).normalized()


def arith(p: IntPoly, q: IntPoly, kind: str) -> IntPoly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown arithmetic kind {kind!r}")
