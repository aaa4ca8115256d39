"""Binary forms and univariate polynomials over a generic coefficient ring.

Coefficients may be Python ints, IntPoly or TowerElem; anything supporting
+, -, * with ints and an exact division works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence


def exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, rem = divmod(a, b)
        if rem:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q
    if isinstance(a, int):
        a = b * 0 + a
    return a.exact_div(b)


def _is_zero(x) -> bool:
    return x == 0


@dataclass(frozen=True)
class BinaryForm:
    """F(X, Y) = a_0 X^n + a_1 X^(n-1) Y + ... + a_n Y^n."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 2:
            raise ValueError("a form needs degree n >= 1")
        if all(_is_zero(c) for c in self.coeffs):
            raise ValueError("all coefficients are zero")

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x, y):
        ypows = [1]
        for _ in range(self.n):
            ypows.append(ypows[-1] * y)
        acc = None
        for i, a in enumerate(self.coeffs):
            t = a * ypows[i]
            acc = t if acc is None else acc * x + t
        return acc


@dataclass(frozen=True)
class UniPoly:
    """F(X) = a_0 X^n + ... + a_n with a_0 != 0."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 2:
            raise ValueError("polynomial needs degree n >= 1")
        if _is_zero(self.coeffs[0]):
            raise ValueError("leading coefficient a_0 must be nonzero")

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = self.coeffs[0]
        for a in self.coeffs[1:]:
            acc = acc * x + a
        return acc

    def homogenize(self) -> BinaryForm:
        return BinaryForm(self.coeffs)


def det_sign(n: int) -> int:
    """Sign s(n) with discriminant_det = s(n) * classical discriminant."""
    return -1 if (n * (n - 1) // 2) % 2 == 0 else 1


def discriminant_matrix(F: BinaryForm | UniPoly) -> list[list[Any]]:
    n = F.n
    if n < 2:
        raise ValueError("discriminant needs n >= 2")
    a = list(F.coeffs)
    size = 2 * n - 2
    zero = a[0] * 0
    M = [[zero] * size for _ in range(size)]
    for i in range(n - 2):
        for k, c in enumerate(a):
            M[i][i + k] = c
    for k in range(n):
        M[n - 2][k] = (k + 1) * a[k + 1]
    for i in range(n - 1):
        for k in range(n):
            M[n - 1 + i][i + k] = (n - k) * a[k]
    return M


def bareiss_det(M: Sequence[Sequence[Any]]):
    """Fraction-free Gaussian elimination; exact over any integral domain."""
    M = [list(row) for row in M]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[k][k] * 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                v = pivot * row_i[j] - mik * row_k[j]
                row_i[j] = v if prev == 1 or _is_zero(v) else exact_div(v, prev)
            row_i[k] = pivot * 0
        prev = pivot
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def discriminant_det(F: BinaryForm | UniPoly):
    return bareiss_det(discriminant_matrix(F))


def berkowitz_det(M: Sequence[Sequence[Any]]):
    """Division-free determinant via Berkowitz's characteristic polynomial."""
    n = len(M)
    if n == 0:
        return 1
    vec: list = [1, -M[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        # leading principal block is M[k:, k:]
        a = M[k][k]
        R = M[k][k + 1:]
        C = [M[i][k] for i in range(k + 1, n)]
        A = [row[k + 1:] for row in M[k + 1:]]
        m = n - k - 1
        diags = [1, -a]
        cur = C
        for _ in range(m):
            s = 0
            for r, c in zip(R, cur):
                s = s + r * c
            diags.append(-s)
            cur = [sum((A[i][j] * cur[j] for j in range(m)), 0) for i in range(m)]
        # lower-triangular Toeplitz (m+2) x (m+1) times vec
        new = []
        for i in range(m + 2):
            s = 0
            for j in range(min(i, m) + 1):
                s = s + diags[i - j] * vec[j]
            new.append(s)
        vec = new
    return vec[n] if n % 2 == 0 else -vec[n]


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list[Any]]:
    """Sylvester matrix of f, g given by descending coefficient lists."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = f[0] * 0
    S = [[zero] * size for _ in range(size)]
    for i in range(n):
        for k, c in enumerate(f):
            S[i][i + k] = c
    for i in range(m):
        for k, c in enumerate(g):
            S[n + i][i + k] = c
    return S


def discriminant_resultant(F: BinaryForm | UniPoly):
    """Classical discriminant (-1)^(n(n-1)/2) Res(F, F') / a_0 of F(X, 1)."""
    n = F.n
    if n < 2:
        raise ValueError("discriminant needs n >= 2")
    a = list(F.coeffs)
    if _is_zero(a[0]):
        raise ValueError("resultant oracle needs a_0 != 0")
    deriv = [(n - k) * a[k] for k in range(n)]
    res = berkowitz_det(sylvester_matrix(a, deriv))
    d = exact_div(res, a[0])
    return d if (n * (n - 1) // 2) % 2 == 0 else -d


@dataclass(frozen=True)
class DiscBounds:
    deg_bound: int
    h_bound: float


def disc_bounds(n: int, d: int, h: float, r: int) -> DiscBounds:
    if n < 2 or d < 1 or r < 1 or h < 1:
        raise ValueError("need n >= 2, d >= 1, h >= 1, r >= 1")
    return DiscBounds(
        (2 * n - 2) * d,
        (2 * n - 2) * (math.log(2 * n * n * math.comb(d + r, r)) + h),
    )
