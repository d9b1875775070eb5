"""Points of the Berkovich line of types I-III and the four kernels.

Point representation
--------------------
* classical affine points are bare scalars (``Fraction`` / ``complex``),
* the point at infinity is the singleton :data:`INF`,
* type II/III points are :class:`Disk` values (p-adic mode only).

Internally a finite non-archimedean point is handled as a pair
``(center, radius)`` with radius zero for classical points, so joins,
diameters and kernels are computed uniformly.

Conventions at infinity follow the two quotient conventions
``inf / inf**2 = 0`` (so ``[inf, inf]_can = 0``) and ``0 / 0**2 = inf``
(so ``|S - inf|_inf = +inf`` for every S).  The source only states them for
the defining quotients; applying them to every degenerate pair is our
extrapolation.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import PreconditionError, UnsupportedModeError
from .scalars import FieldMode, PAdicMag, _fast_mag

__all__ = [
    "INF",
    "Disk",
    "gauss_point",
    "is_infinity",
    "diam",
    "chordal",
    "join",
    "dominates",
    "median",
    "hsia",
    "kernel_can",
    "kernel_can_gromov",
    "small_metric",
    "lemma_comparison_holds",
    "pi_epsilon",
    "iota",
    "affine_apply",
    "mobius_apply",
    "mobius_inverse",
    "in_isometry_group",
]


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_infinity(S) -> bool:
    return S is INF


class Disk:
    """Berkovich point of the closed disk ``D(center, radius)``.

    Two disks are equal iff their radii agree and each center lies in the
    other disk.
    """

    __slots__ = ("center", "radius")

    def __init__(self, center, radius: PAdicMag):
        if not isinstance(radius, PAdicMag):
            raise TypeError("disk radius must be a PAdicMag")
        if radius.is_zero or radius.is_infinite:
            raise ValueError("disk radius must be positive and finite")
        self.center = Fraction(center)
        self.radius = radius

    @property
    def p(self) -> int:
        return self.radius.p

    def __eq__(self, other):
        if not isinstance(other, Disk):
            return NotImplemented
        return self.radius == other.radius and _fast_mag(self.center - other.center, self.p) <= self.radius

    def __hash__(self):
        return hash(("disk", self.radius))

    def __repr__(self):
        return f"Disk({self.center}, {self.radius!r})"


def gauss_point(p: int) -> Disk:
    """The canonical (Gauss) point ``D(0, 1)``."""
    return Disk(0, PAdicMag.one(p))


def _finite(S, p):
    """(center, radius) for finite p-adic points, None for INF."""
    if S is INF:
        return None
    if isinstance(S, Disk):
        return S.center, S.radius
    return Fraction(S), PAdicMag(p, math.inf)


def _make(center, radius: PAdicMag):
    return center if radius.is_zero else Disk(center, radius)


def _require_padic(mode: FieldMode, what: str):
    if mode.archimedean:
        raise UnsupportedModeError(f"{what} is only defined in p-adic mode")


def _classical_arch(z):
    if isinstance(z, Disk):
        raise UnsupportedModeError("disk points do not exist in archimedean mode")
    return z if z is INF else complex(z)


def diam(S, mode: FieldMode):
    if mode.archimedean:
        _classical_arch(S)
        return math.inf if S is INF else 0.0
    if S is INF:
        return PAdicMag.infinity(mode.p)
    return _finite(S, mode.p)[1]


def _rho(a, r, p):
    # max{1, |a|, r} = 1 / [D(a, r), inf]_can
    return max(PAdicMag(p, 0), _fast_mag(a, p), r)


def chordal(z, w, mode: FieldMode):
    """Normalized chordal distance on the classical projective line."""
    if mode.archimedean:
        z, w = _classical_arch(z), _classical_arch(w)
        if z is INF and w is INF:
            return 0.0
        if z is INF or w is INF:
            a = w if z is INF else z
            return 1.0 / math.hypot(1.0, abs(a))
        return abs(z - w) / (math.hypot(1.0, abs(z)) * math.hypot(1.0, abs(w)))
    if isinstance(z, Disk) or isinstance(w, Disk):
        raise PreconditionError("chordal distance takes classical points; use kernel_can")
    p = mode.p
    one = PAdicMag(p, 0)
    if z is INF and w is INF:
        return PAdicMag.zero(p)
    if z is INF or w is INF:
        a = Fraction(w if z is INF else z)
        return one / max(one, _fast_mag(a, p))
    z, w = Fraction(z), Fraction(w)
    return _fast_mag(z - w, p) / (max(one, _fast_mag(z, p)) * max(one, _fast_mag(w, p)))


def join(S, T, mode: FieldMode):
    """Smallest point dominating both ``S`` and ``T``."""
    _require_padic(mode, "join")
    if S is INF or T is INF:
        return INF
    (a, r), (b, s) = _finite(S, mode.p), _finite(T, mode.p)
    return _make(a, max(r, s, _fast_mag(a - b, mode.p)))


def dominates(S, T, mode: FieldMode) -> bool:
    """``S ⪰ T``: the disk of ``S`` contains the disk of ``T``."""
    _require_padic(mode, "dominates")
    if S is INF:
        return True
    if T is INF:
        return False
    (a, r), (b, s) = _finite(S, mode.p), _finite(T, mode.p)
    return s <= r and _fast_mag(a - b, mode.p) <= r


def median(S, T, U, mode: FieldMode):
    """The tree median of three points (rooted at infinity)."""
    cands = (join(S, T, mode), join(T, U, mode), join(S, U, mode))
    return min(cands, key=lambda X: diam(X, mode))


def hsia(S, T, mode: FieldMode):
    """Hsia kernel ``|S - T|_inf``; ``+inf`` whenever a point is INF."""
    if mode.archimedean:
        S, T = _classical_arch(S), _classical_arch(T)
        if S is INF or T is INF:
            return math.inf
        return abs(S - T)
    p = mode.p
    if S is INF or T is INF:
        return PAdicMag.infinity(p)
    (a, r), (b, s) = _finite(S, p), _finite(T, p)
    return max(_fast_mag(a - b, p), r, s)


def _inf_factor(S, p):
    """``[S, inf]_can`` for a finite p-adic point."""
    a, r = _finite(S, p)
    return PAdicMag(p, 0) / _rho(a, r, p)


def kernel_can(S, T, mode: FieldMode):
    """Generalized Hsia kernel ``[S, T]_can`` (Hsia-quotient form)."""
    if mode.archimedean:
        return chordal(S, T, mode)
    p = mode.p
    if S is INF and T is INF:
        return PAdicMag.zero(p)
    if S is INF or T is INF:
        return _inf_factor(T if S is INF else S, p)
    return hsia(S, T, mode) * _inf_factor(S, p) * _inf_factor(T, p)


def kernel_can_gromov(S, T, mode: FieldMode):
    """``[S, T]_can`` from the tree median with the Gauss point.

    ``diam(M) / diam(S_can ∧ M)**2`` with ``M`` the median of ``S``, ``T``
    and the Gauss point; an independent route to :func:`kernel_can`.
    """
    if mode.archimedean:
        return chordal(S, T, mode)
    p = mode.p
    M = median(S, T, gauss_point(p), mode)
    if M is INF:
        return PAdicMag.zero(p)  # inf / inf**2 = 0
    top = diam(join(gauss_point(p), M, mode), mode)
    return diam(M, mode) / (top * top)


def small_metric(S, T, mode: FieldMode) -> float:
    """``d(S, T) = [S,T]_can - ([S,S]_can + [T,T]_can) / 2`` as a float."""
    k = float(kernel_can(S, T, mode))
    return k - (float(kernel_can(S, S, mode)) + float(kernel_can(T, T, mode))) / 2


def lemma_comparison_holds(z, S, mode: FieldMode) -> bool:
    """Exact test of ``d(z, S) >= [z, S]_can / 2`` for classical ``z``.

    Since ``[z, z]_can = 0``, ``2 d(z,S) - [z,S]_can = [z,S]_can - [S,S]_can``,
    so the inequality is the exact magnitude comparison below.
    """
    if isinstance(z, Disk):
        raise PreconditionError("first argument must be a classical point")
    if mode.archimedean:
        return small_metric(z, S, mode) >= float(kernel_can(z, S, mode)) / 2 - 1e-12
    return kernel_can(z, S, mode) >= kernel_can(S, S, mode)


def pi_epsilon(z, eps: PAdicMag, mode: FieldMode):
    """Berkovich point carrying the regularized Dirac mass ``[z]_eps``.

    Affine ``z`` maps to ``D(z, eps)``; ``INF`` maps to ``D(0, 1/eps)``, the
    image of ``D(0, eps)`` under ``z -> 1/z``.
    """
    _require_padic(mode, "pi_epsilon")
    if not isinstance(eps, PAdicMag) or eps.p != mode.p:
        raise PreconditionError("eps must be a PAdicMag for the same prime")
    if eps.is_zero or eps > PAdicMag(mode.p, 0):
        raise PreconditionError("eps must lie in (0, 1]")
    if isinstance(z, Disk):
        raise PreconditionError("pi_epsilon takes a classical point")
    if z is INF:
        return Disk(0, PAdicMag(mode.p, 0) / eps)
    return Disk(z, eps)


# --- Möbius action -----------------------------------------------------

def iota(S, mode: FieldMode):
    """The involution ``z -> 1/z``."""
    if mode.archimedean:
        S = _classical_arch(S)
        if S is INF:
            return 0j
        return INF if S == 0 else 1 / S
    p = mode.p
    if S is INF:
        return Fraction(0)
    a, r = _finite(S, p)
    if r.is_zero:
        return INF if a == 0 else 1 / a
    ma = _fast_mag(a, p)
    if ma > r:
        return Disk(1 / a, r / (ma * ma))
    return Disk(0, PAdicMag(p, 0) / r)


def affine_apply(S, alpha, beta, mode: FieldMode):
    """Image of ``S`` under ``z -> alpha z + beta`` (``alpha != 0``)."""
    if S is INF:
        return INF
    if mode.archimedean:
        return complex(alpha) * _classical_arch(S) + complex(beta)
    alpha, beta = Fraction(alpha), Fraction(beta)
    a, r = _finite(S, mode.p)
    return _make(alpha * a + beta, r * _fast_mag(alpha, mode.p))


def _det(h):
    return h[0][0] * h[1][1] - h[0][1] * h[1][0]


def in_isometry_group(h, mode: FieldMode, tol: float = 1e-9) -> bool:
    """Membership in PGL(2, O_K) (p-adic) or PSU(2) (archimedean).

    p-adic: some scalar multiple has integral entries and unit determinant;
    we normalize by the largest entry.
    """
    if mode.archimedean:
        m = np.array(h, dtype=complex)
        d = np.linalg.det(m)
        if abs(d) < 1e-300:
            return False
        m = m / cmath.sqrt(d)
        return bool(np.allclose(m @ m.conj().T, np.eye(2), atol=tol))
    p = mode.p
    entries = [Fraction(x) for row in h for x in row]
    if all(e == 0 for e in entries):
        return False
    top = max(_fast_mag(e, p) for e in entries if e != 0)
    # scale so the largest entry is a unit: entries / |top| in O_K
    scale = top
    det_mag = _fast_mag(_det([[Fraction(x) for x in row] for row in h]), p)
    return det_mag == scale * scale


def mobius_inverse(h):
    (a, b), (c, d) = h
    return ((d, -b), (-c, a))


def mobius_apply(h, S, mode: FieldMode, check: bool = True):
    """Apply the fractional linear map ``h = ((a, b), (c, d))`` to ``S``.

    Classical points use the usual formula.  Disks use the decomposition
    ``h = A2 ∘ iota ∘ A1`` with affine ``A1(z) = z + d/c`` and
    ``A2(w) = a/c - (det/c**2) w`` when ``c != 0``, and the affine map
    ``z -> (a z + b)/d`` otherwise; every invertible ``h`` decomposes so no
    disk input is rejected.  With ``check`` the matrix must lie in the
    isometry group.
    """
    if check and not in_isometry_group(h, mode):
        raise PreconditionError("matrix is not in the isometry group U_K")
    (a, b), (c, d) = h
    if mode.archimedean:
        a, b, c, d = map(complex, (a, b, c, d))
        S = _classical_arch(S)
        if S is INF:
            return INF if c == 0 else a / c
        den = c * S + d
        if den == 0:
            return INF
        return (a * S + b) / den
    a, b, c, d = map(Fraction, (a, b, c, d))
    if _det(((a, b), (c, d))) == 0:
        raise PreconditionError("singular matrix")
    if not isinstance(S, Disk):
        if S is INF:
            return INF if c == 0 else a / c
        S = Fraction(S)
        den = c * S + d
        if den == 0:
            return INF
        return (a * S + b) / den
    if c == 0:
        return affine_apply(S, a / d, b / d, mode)
    det = a * d - b * c
    T = affine_apply(S, 1, d / c, mode)
    T = iota(T, mode)
    return affine_apply(T, -det / (c * c), a / c, mode)
