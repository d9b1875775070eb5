"""Exact univariate polynomials over Q.

Resultants are Sylvester determinants computed by fraction-free (Bareiss)
elimination after clearing denominators; Newton polygons use the lower
convex hull of ``(i, v_p(a_i))``.

Sign convention for Newton polygons: a segment of slope ``s`` and length
``l`` certifies ``l`` roots of p-adic valuation ``-s``, i.e. of magnitude
``p**s``.  With this convention ``z^2 - z + 1/9`` at ``p = 3`` has a single
segment of slope 1, so both roots have magnitude 3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .scalars import PAdicMag, padic_valuation

__all__ = [
    "RatPoly",
    "NewtonPolygon",
    "poly_compose",
    "poly_iterate",
    "poly_gcd",
    "resultant",
    "discriminant",
    "newton_polygon",
    "squarefree_check",
]


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class RatPoly:
    """Dense polynomial with Fraction coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(Fraction(c) for c in coeffs)

    @classmethod
    def monomial(cls, k: int, c=1):
        return cls([0] * k + [c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "RatPoly":
        return RatPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def divmod(self, other: "RatPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 1)
        inv = 1 / other.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                q[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return RatPoly(q), RatPoly(rem[:dq] if dq > 0 else [])

    def monic(self) -> "RatPoly":
        return RatPoly(c / self.lc for c in self.coeffs)

    def taylor(self, a) -> "RatPoly":
        """Coefficients of ``f(z + a)`` (Taylor coefficients at ``a``)."""
        return poly_compose(self, RatPoly([a, 1]))

    def to_json(self):
        return [str(c) for c in self.coeffs] or ["0"]

    @classmethod
    def from_json(cls, data):
        return cls(Fraction(s) for s in data)


def _as_poly(x) -> RatPoly:
    return x if isinstance(x, RatPoly) else RatPoly([x])


def poly_compose(f: RatPoly, g: RatPoly) -> RatPoly:
    """``f(g(z))`` by Horner's scheme."""
    acc = RatPoly()
    for c in reversed(f.coeffs):
        acc = acc * g + c
    return acc


def poly_iterate(f: RatPoly, n: int) -> RatPoly:
    """The ``n``-th iterate ``f∘…∘f``; ``n >= 1``."""
    if n < 1:
        raise ValueError("iterate count must be >= 1")
    g = f
    for _ in range(n - 1):
        g = poly_compose(f, g)
    return g


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd (zero polynomial iff both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def _integer_content(p: RatPoly):
    """Return (c, integer coefficient list) with p = ints / c."""
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in p.coeffs), 1)
    return den, [int(c * den) for c in p.coeffs]


def _bareiss_det(m):
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def sylvester_matrix(P, Q):
    """Sylvester matrix of two coefficient lists (constant term first)."""
    m, n = len(P) - 1, len(Q) - 1
    size = m + n
    pd, qd = list(reversed(P)), list(reversed(Q))
    rows = []
    for i in range(n):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - n - 1 - i))
    return rows


def resultant(P: RatPoly, Q: RatPoly) -> Fraction:
    """``Res(P, Q) = lc(P)^deg Q * prod Q(alpha)`` over the roots of P."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    m, n = P.degree, Q.degree
    if m == 0:
        return P.lc ** n
    if n == 0:
        return Q.lc ** m
    cp, ip = _integer_content(P)
    cq, iq = _integer_content(Q)
    det = _bareiss_det(sylvester_matrix(ip, iq))
    return Fraction(det) / (Fraction(cp) ** n * Fraction(cq) ** m)


def discriminant(P: RatPoly) -> Fraction:
    n = P.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(P, P.derivative()) / P.lc


def squarefree_check(P: RatPoly) -> bool:
    if P.degree < 1:
        raise ValueError("squarefree check needs degree >= 1")
    return poly_gcd(P, P.derivative()).degree == 0


@dataclass(frozen=True)
class NewtonPolygon:
    """Segments ``(slope, length)`` with strictly increasing slopes.

    ``zero_roots`` counts roots at 0 (vanishing low coefficients); those
    correspond to the +inf-valuation part and are not a segment.
    """

    p: int
    segments: tuple
    zero_roots: int = 0

    @property
    def degree(self) -> int:
        return self.zero_roots + sum(l for _, l in self.segments)

    def root_magnitudes(self):
        """Root magnitudes with multiplicity, zero roots first."""
        out = [PAdicMag.zero(self.p)] * self.zero_roots
        for s, l in self.segments:
            out.extend([PAdicMag(self.p, -s)] * l)
        return out

    def single_slope(self) -> bool:
        return self.zero_roots == 0 and len(self.segments) == 1


def newton_polygon(P: RatPoly, p: int) -> NewtonPolygon:
    if P.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(i, padic_valuation(c, p)) for i, c in enumerate(P.coeffs) if c != 0]
    zero_roots = pts[0][0]
    hull = []
    for pt in pts:
        # drop points on or above the chord (collinear points merge segments)
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = tuple(
        (Fraction(y2 - y1, x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(p, segs, zero_roots)
