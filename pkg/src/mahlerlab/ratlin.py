"""Exact rational vectors and matrices.

Every coordinate, offset, and volume in this package is a
``fractions.Fraction``: always in lowest terms with a positive denominator,
and nothing ever rounds.  Vectors are tuples of Fractions, matrices tuples of
row tuples; both are immutable and hashable so geometric objects built from
them can be cached and compared exactly.

Hot loops (determinants, rank tests, the conversion engine) first clear
denominators and run on plain Python integers, which is several times faster
than Fraction arithmetic and just as exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import DimensionError

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def fr(x) -> Fraction:
    """Coerce an int, string like ``"3/4"`` or ``"0.25"``, or Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(fr(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int, s: Fraction = ONE) -> Vec:
    return tuple(s if j == i else ZERO for j in range(n))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum(a * b for a, b in zip(u, v, strict=True))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(s: Fraction, u: Sequence[Fraction]) -> Vec:
    return tuple(s * a for a in u)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b, strict=True))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> Mat:
    return tuple(unit_vec(n, i) for i in range(n))


# ---------------------------------------------------------------------------
# integer kernels


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix (exact row echelon with gcd trimming)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    cols = len(m[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        pv = prow[c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = [m[i][j] * pv - f * prow[j] for j in range(cols)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                    if g == 1:
                        break
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def common_denominator(xs: Iterable[Fraction]) -> int:
    d = 1
    for x in xs:
        d = d * x.denominator // gcd(d, x.denominator)
    return d


def scaled_int_vec(v: Sequence[Fraction], scale: int) -> tuple[int, ...]:
    return tuple(int(x * scale) for x in v)


def primitive_int_vec(v: Sequence[int]) -> tuple[int, ...]:
    """Divide out the gcd (sign preserved; the zero vector is unchanged)."""
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return tuple(v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def frac_to_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """Clear denominators row by row (each row scaled independently)."""
    out = []
    for r in rows:
        d = common_denominator(r)
        out.append(tuple(int(x * d) for x in r))
    return out


# ---------------------------------------------------------------------------
# rational interface


def determinant(m: Mat) -> Fraction:
    """Exact determinant; fraction-free elimination after clearing denominators."""
    n = len(m)
    if n == 0:
        return ONE
    scales = []
    int_rows = []
    for r in m:
        d = common_denominator(r)
        scales.append(d)
        int_rows.append([int(x * d) for x in r])
    det = int_det(int_rows)
    out = Fraction(det)
    for d in scales:
        out /= d
    return out


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return int_rank(frac_to_int_rows(rows))


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of the given points (0 for a single point)."""
    if not points:
        raise DimensionError("affine_rank of an empty point set")
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0, strict=True)) for p in points[1:]]
    return rank(diffs) if diffs else 0


def solve_linear(m: Mat, b: Vec) -> Vec | None:
    """Solve m x = b exactly; return None when m is singular.

    Gaussian elimination with the first nonzero pivot.  Exact arithmetic makes
    pivot-size strategies unnecessary: any nonzero pivot is a correct one.
    """
    n = len(m)
    if n == 0:
        return ()
    if any(len(r) != n for r in m) or len(b) != n:
        raise ValueError("solve_linear needs square m and matching b")
    a = [list(row) + [bv] for row, bv in zip(m, b, strict=True)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col], strict=True)]
    return tuple(a[i][n] for i in range(n))


def sqrt_enclosure(x: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure [lo, hi] of sqrt(x) with hi - lo <= tol.

    lo^2 <= x <= hi^2 exactly; lo == hi when x is a perfect rational square.
    """
    if x < 0:
        raise ValueError("sqrt_enclosure needs x >= 0")
    if tol <= 0:
        raise ValueError("tol must be positive")
    num, den = x.numerator, x.denominator
    k = math.ceil(1 / tol)
    m = isqrt(num * den * k * k)
    if m * m == num * den * k * k:
        s = Fraction(m, den * k)
        return (s, s)
    return (Fraction(m, den * k), Fraction(m + 1, den * k))


def format_exact(x: Fraction) -> str:
    """Canonical exact string: ``p/q`` or ``p`` when q == 1."""
    return str(x)


def format_approx(x: Fraction) -> str:
    """12-significant-digit decimal, clearly an approximation, never used inward."""
    return f"{float(x):.12g}"


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational: {s!r}") from e
