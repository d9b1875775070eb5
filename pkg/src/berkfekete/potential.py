"""Weights, Fekete sums and regularized Fekete sums.

Energies in p-adic mode are carried as exact rational multiples of
``log p`` whenever the weight supplies exact values; see
:class:`EnergyValue`.

Archimedean regularizations replace a point by the uniform measure on a
circle (the point at infinity by the circle ``|w| = 1/eps``).  Double
integrals of ``log|s - t|`` collapse by Jensen's formula to one circle mean
of a max-form integrand; circle means are computed by Gauss-Legendre on the
arcs between kink angles (or by the periodic trapezoid rule when the
integrand is smooth) and compared against a refinement.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .berkovich import INF, Disk, kernel_can, mobius_apply, pi_epsilon, small_metric
from .errors import MissingModulusError, PreconditionError, QuadratureWarning
from .report import BoundReport, make_report
from .scalars import FieldMode, PAdicMag, _vint, as_scalar, log_coeff, to_log_real

__all__ = [
    "Weight",
    "Divisor",
    "EnergyValue",
    "zero_weight",
    "g0_weight",
    "G0_LIPSCHITZ",
    "phi_g",
    "fekete_sum",
    "fekete_recursion_check",
    "circle_mean",
    "regularized_log_distance",
    "regularized_pair_energy",
    "regularized_fekete_sum",
    "negativity_check",
    "lower_bound_check",
    "modulus_eta_hat",
    "pairwise_lower_bound",
    "sampled_eta",
    "as_padic_eps",
]

QUAD_TOL = 1e-6
TRAPEZOID_NODES = 4096
GL_NODES = 64


@dataclass(frozen=True)
class Weight:
    """A continuous weight ``g`` together with the data bounds need.

    ``exact(S)`` (p-adic mode, optional) returns the rational ``c`` with
    ``g(S) = c log p``.  ``vectorized`` evaluates finite archimedean points
    in bulk.  ``kinks`` lists circles ``(center, radius)`` off which ``g`` is
    smooth, used to split quadrature arcs.  ``normalized`` is declared by
    the constructor, never computed.
    """

    mode: FieldMode
    evaluate: Callable
    sup_abs: float | None = None
    holder: tuple | None = None
    normalized: bool = False
    label: str = "weight"
    exact: Callable | None = None
    vectorized: Callable | None = None
    kinks: tuple = ()
    constant: float | None = None
    sup_estimated: bool = False
    holder_estimated: bool = False

    def __call__(self, S) -> float:
        return self.evaluate(S)

    def values(self, z: np.ndarray) -> np.ndarray:
        if self.vectorized is not None:
            return np.asarray(self.vectorized(z), dtype=float)
        return np.array([self.evaluate(complex(x)) for x in np.ravel(z)]).reshape(np.shape(z))

    def compose(self, h) -> "Weight":
        """``g ∘ h`` for ``h`` in the isometry group (still normalized)."""
        mode = self.mode
        g, ex = self.evaluate, self.exact
        return replace(
            self,
            evaluate=lambda S: g(mobius_apply(h, S, mode, check=False)),
            exact=None if ex is None else (lambda S: ex(mobius_apply(h, S, mode, check=False))),
            vectorized=None,
            kinks=(),
            label=f"{self.label}∘h",
        )


def zero_weight(mode: FieldMode) -> Weight:
    """``g ≡ 0``; normalized only in p-adic mode (there ``V_0 = log 1``)."""
    return Weight(
        mode=mode, evaluate=lambda S: 0.0, sup_abs=0.0, holder=(0.0, 1.0),
        normalized=not mode.archimedean, label="zero",
        exact=None if mode.archimedean else (lambda S: Fraction(0)),
        vectorized=lambda z: np.zeros(np.shape(z)), constant=0.0,
    )


# sup over x in (0, pi/2] of min(x, log(2)/2) / sin(x): |g0(z)-g0(w)| is at most
# half the polar-angle gap and at most log(2)/2, while [z,w] = sin(gap/2)
G0_LIPSCHITZ = (0.5 * math.log(2)) / math.sin(0.5 * math.log(2))


def _g0_scalar(S) -> float:
    if S is INF:
        return 0.0
    r = abs(complex(S))
    if r <= 1.0:
        return -0.5 * math.log1p(r * r)
    return -0.5 * math.log1p(1.0 / (r * r))


def _g0_vec(z):
    r = np.abs(np.asarray(z, dtype=complex))
    with np.errstate(divide="ignore"):
        inv = np.where(r > 1.0, 1.0 / np.where(r > 1.0, r, 1.0), 0.0)
    return np.where(r <= 1.0, -0.5 * np.log1p(r * r), -0.5 * np.log1p(inv * inv))


def g0_weight() -> Weight:
    """``log max{1,|z|} + log[z, ∞]`` on the Riemann sphere.

    Lipschitz (``kappa = 1``) with constant :data:`G0_LIPSCHITZ`; its sup of
    ``|g0|`` is ``log(2)/2``, attained on the unit circle.
    """
    return Weight(
        mode=FieldMode.arch(), evaluate=_g0_scalar, sup_abs=0.5 * math.log(2),
        holder=(G0_LIPSCHITZ, 1.0), normalized=True, label="g0",
        vectorized=_g0_vec, kinks=((0j, 1.0),),
    )


@dataclass(frozen=True)
class Divisor:
    """Effective divisor on the classical projective line."""

    points: tuple
    mults: tuple

    def __post_init__(self):
        if len(self.points) != len(self.mults) or not self.points:
            raise ValueError("a divisor needs at least one point and one multiplicity per point")
        if any(isinstance(z, Disk) for z in self.points):
            raise ValueError("divisor points must be classical")
        if any((not isinstance(m, int)) or m < 1 for m in self.mults):
            raise ValueError("multiplicities must be positive integers")
        if len(set(self.points)) != len(self.points):
            raise ValueError("divisor points must be pairwise distinct")

    @classmethod
    def from_points(cls, pts) -> "Divisor":
        pts = tuple(pts)
        return cls(pts, (1,) * len(pts))

    @classmethod
    def from_pairs(cls, pairs) -> "Divisor":
        pairs = list(pairs)
        return cls(tuple(z for z, _ in pairs), tuple(int(m) for _, m in pairs))

    @property
    def deg(self) -> int:
        return sum(self.mults)

    @property
    def diag_mass(self) -> int:
        return sum(m * m for m in self.mults)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(zip(self.points, self.mults))

    def without(self, z) -> "Divisor":
        keep = [(w, m) for w, m in self if w != z or (w is INF) != (z is INF)]
        return Divisor.from_pairs(keep)

    def is_reduced(self) -> bool:
        return all(m == 1 for m in self.mults)


def _as_divisor(Z) -> Divisor:
    return Z if isinstance(Z, Divisor) else Divisor.from_points(Z)


@dataclass(frozen=True)
class EnergyValue:
    """An energy: ``exact * log p`` when ``exact`` is set, else ``approx``."""

    approx: float
    exact: Fraction | None = None
    p: int | None = None
    quad_error: float = 0.0

    @classmethod
    def from_exact(cls, c, p: int) -> "EnergyValue":
        c = Fraction(c)
        return cls(float(c) * math.log(p), c, p)

    def __float__(self):
        return self.approx

    def to_json(self) -> dict:
        return {
            "exact": None if self.exact is None else str(self.exact),
            "approx": self.approx,
            "log_base_prime": self.p if self.exact is not None else None,
        }


def _weight_exact(g: Weight, S):
    if g.exact is None:
        return None
    c = g.exact(S)
    return None if c is None else Fraction(c)


def phi_g(S, T, g: Weight) -> float:
    """``log [S, T]_can - g(S) - g(T)``; ``-inf`` for coincident classical points."""
    k = kernel_can(S, T, g.mode)
    return to_log_real(k) - g(S) - g(T)


def phi_g_exact(S, T, g: Weight):
    """Exact coefficient of ``log p`` for :func:`phi_g`, or ``None``."""
    if g.exact is None:
        return None
    c = log_coeff(kernel_can(S, T, g.mode))
    gs, gt = _weight_exact(g, S), _weight_exact(g, T)
    if c is None or gs is None or gt is None:
        return None
    return c - gs - gt


def _padic_log_pairs(pts, mults, p):
    """``sum_{i != j} m_i m_j log[z_i, z_j] / log p`` as an integer."""
    fin = []
    for z, m in zip(pts, mults):
        if z is not INF:
            z = Fraction(z)
            tplus = max(0, _vint(z.denominator, p) - _vint(z.numerator, p)) if z else 0
            fin.append((z, m, tplus))
    deg = sum(mults)
    total = 0
    for i in range(len(fin)):
        zi, mi, _ = fin[i]
        for j in range(i + 1, len(fin)):
            zj, mj, _ = fin[j]
            d = zi - zj
            total -= mi * mj * (_vint(d.numerator, p) - _vint(d.denominator, p))
    total *= 2
    for _, m, tplus in fin:
        total -= 2 * m * tplus * (deg - m)
    return total


def _arch_log_pairs(pts, mults) -> float:
    fin = [(complex(z), m) for z, m in zip(pts, mults) if z is not INF]
    deg = sum(mults)
    if not fin:
        return 0.0
    z = np.array([a for a, _ in fin], dtype=complex)
    m = np.array([b for _, b in fin], dtype=float)
    h = 0.5 * np.log1p(np.abs(z) ** 2)
    total = -2.0 * float(np.sum(m * h * (deg - m)))
    if len(z) > 1:
        D = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(D, 1.0)
        with np.errstate(divide="ignore"):
            total += float(m @ np.log(D) @ m)
    return total


def _weight_part(Z: Divisor, g: Weight):
    """``sum_{i != j} m_i m_j (g_i + g_j)`` as (float, exact-or-None)."""
    deg = Z.deg
    if g.mode.archimedean:
        fin = [(z, m) for z, m in Z if z is not INF]
        val = 0.0
        if fin:
            gv = g.values(np.array([complex(z) for z, _ in fin]))
            mv = np.array([m for _, m in fin], dtype=float)
            val = 2.0 * float(np.sum(mv * gv * (deg - mv)))
        for z, m in Z:
            if z is INF:
                val += 2.0 * m * g(INF) * (deg - m)
        return val, None
    exs = [_weight_exact(g, z) for z, _ in Z]
    if all(c is not None for c in exs):
        ex = sum(2 * m * c * (deg - m) for c, (_, m) in zip(exs, Z))
        return float(ex) * math.log(g.mode.p), ex
    return sum(2.0 * m * g(z) * (deg - m) for z, m in Z), None


def fekete_sum(Z, g: Weight) -> EnergyValue:
    """``(Z, Z)_g``: off-diagonal sum of ``m_z m_w Phi_g(z, w)``."""
    Z = _as_divisor(Z)
    mode = g.mode
    pts = tuple(as_scalar(z, mode) if z is not INF else INF for z in Z.points)
    if mode.archimedean:
        logs = _arch_log_pairs(pts, Z.mults)
        wv, _ = _weight_part(Z, g)
        return EnergyValue(logs - wv)
    p = mode.p
    logs = _padic_log_pairs(pts, Z.mults, p)
    wv, wex = _weight_part(Z, g)
    if wex is not None:
        return EnergyValue.from_exact(logs - wex, p)
    return EnergyValue(logs * math.log(p) - wv)


def fekete_recursion_check(F, z, g: Weight, tol: float = 1e-9) -> bool:
    """Check ``(F,F)_g = 2 sum_{w != z} Phi_g(z,w) + (F-{z}, F-{z})_g``."""
    F = _as_divisor(F)
    if not F.is_reduced() or len(F) < 2:
        raise PreconditionError("need a reduced divisor with at least two points")
    lhs = fekete_sum(F, g)
    rest = F.without(z)
    if len(rest) != len(F) - 1:
        raise PreconditionError("z is not in F")
    smaller = fekete_sum(rest, g)
    if lhs.exact is not None and smaller.exact is not None:
        cs = [phi_g_exact(z, w, g) for w in rest.points]
        if all(c is not None for c in cs):
            return lhs.exact == 2 * sum(cs) + smaller.exact
    rhs = 2.0 * sum(phi_g(z, w, g) for w in rest.points) + smaller.approx
    return abs(lhs.approx - rhs) <= tol * max(1.0, abs(lhs.approx))


# --- circle quadrature ---------------------------------------------------

@lru_cache(maxsize=8)
def _gl(n):
    return np.polynomial.legendre.leggauss(n)


def _kink_angles(center, radius, kinks):
    angs = []
    for kc, kr in kinks:
        delta = complex(center) - complex(kc)
        md = abs(delta)
        if md == 0.0:
            continue
        c = (kr * kr - md * md - radius * radius) / (2.0 * radius * md)
        if -1.0 < c < 1.0:
            base, a = cmath.phase(delta), math.acos(c)
            angs += [(base + a) % (2 * math.pi), (base - a) % (2 * math.pi)]
    return sorted(set(angs))


def _gl_mean(fn, center, radius, angs, n):
    x, w = _gl(n)
    total = 0.0
    for k, a in enumerate(angs):
        b = angs[(k + 1) % len(angs)]
        if b <= a:
            b += 2 * math.pi
        half = (b - a) / 2
        th = a + half * (x + 1)
        total += half * float(np.dot(w, fn(center + radius * np.exp(1j * th))))
    return total / (2 * math.pi)


def circle_mean(fn, center, radius, kinks=(), n: int | None = None):
    """Mean of ``fn`` over the circle ``|t - center| = radius``.

    Returns ``(value, err)`` where ``err`` compares two refinements.
    ``fn`` must accept complex numpy arrays.
    """
    center, radius = complex(center), float(radius)
    angs = _kink_angles(center, radius, kinks)
    if not angs:
        N = n or TRAPEZOID_NODES
        th1 = 2 * math.pi * np.arange(N) / N
        th2 = 2 * math.pi * np.arange(2 * N) / (2 * N)
        v1 = float(np.mean(fn(center + radius * np.exp(1j * th1))))
        v2 = float(np.mean(fn(center + radius * np.exp(1j * th2))))
        return v2, abs(v2 - v1)
    if len(angs) == 1:
        angs = angs + [(angs[0] + math.pi) % (2 * math.pi)]
        angs.sort()
    N = n or GL_NODES
    v1 = _gl_mean(fn, center, radius, angs, N)
    v2 = _gl_mean(fn, center, radius, angs, 2 * N)
    return v2, abs(v2 - v1)


def _arch_circle(z, eps):
    return (0j, 1.0 / eps) if z is INF else (complex(z), float(eps))


def _circle_log_distance(c1, r1, c2, r2):
    """Double mean of ``log|s - t|`` over two circles; ``(value, err)``."""
    dist = abs(c2 - c1)
    if dist >= r1 + r2:
        return math.log(dist), 0.0
    if dist + r2 <= r1:
        return math.log(r1), 0.0
    if dist + r1 <= r2:
        return math.log(r2), 0.0
    # Jensen on the first circle leaves log max(|t - c1|, r1) on the second
    return circle_mean(lambda t: np.log(np.maximum(np.abs(t - c1), r1)), c2, r2, kinks=((c1, r1),))


def as_padic_eps(eps, mode: FieldMode) -> PAdicMag:
    """Accept a PAdicMag or a rational power of p as a regularization radius."""
    if isinstance(eps, PAdicMag):
        return eps
    q = Fraction(eps)
    if q <= 0:
        raise PreconditionError("eps must be positive")
    p = mode.p
    v = _vint(q.numerator, p) - _vint(q.denominator, p)
    if q != Fraction(p) ** v:
        raise PreconditionError(f"eps = {q} is not a power of p = {p}")
    return PAdicMag(p, -v)


def _check_eps(eps, mode):
    if mode.archimedean:
        e = float(eps)
        if not 0.0 < e <= 1.0:
            raise PreconditionError("eps must lie in (0, 1]")
        return e
    e = as_padic_eps(eps, mode)
    if e.is_zero or e > PAdicMag(mode.p, 0):
        raise PreconditionError("eps must lie in (0, 1]")
    return e


def regularized_log_distance(z, w, eps, mode: FieldMode) -> float:
    """Double integral of ``log|S - S'|_inf`` against ``[z]_eps x [w]_eps``.

    Affine ``z, w`` only; equals ``log eps`` when ``z = w``.
    """
    if z is INF or w is INF:
        raise PreconditionError("affine points only")
    eps = _check_eps(eps, mode)
    if mode.archimedean:
        return _circle_log_distance(complex(z), eps, complex(w), eps)[0]
    from .berkovich import hsia

    return to_log_real(hsia(pi_epsilon(z, eps, mode), pi_epsilon(w, eps, mode), mode))


class _ArchPointData:
    """Per-point circle means reused across all pairs."""

    def __init__(self, z, eps, g: Weight):
        self.center, self.radius = _arch_circle(z, eps)
        self.h, e1 = circle_mean(lambda s: 0.5 * np.log1p(np.abs(s) ** 2), self.center, self.radius)
        self.g, e2 = circle_mean(g.values, self.center, self.radius, kinks=g.kinks)
        self.err = e1 + e2


def _arch_pair(a: _ArchPointData, b: _ArchPointData):
    ll, err = _circle_log_distance(a.center, a.radius, b.center, b.radius)
    return ll - a.h - b.h - a.g - b.g, err + a.err + b.err


def _padic_pair_exact(z, w, eps, g):
    mode = g.mode
    S, T = pi_epsilon(z, eps, mode), pi_epsilon(w, eps, mode)
    return phi_g_exact(S, T, g)


def regularized_pair_energy(z, w, eps, g: Weight) -> float:
    """``∫∫ Phi_g d([z]_eps x [w]_eps)`` (diagonal case ``z = w`` included)."""
    mode = g.mode
    eps = _check_eps(eps, mode)
    if mode.archimedean:
        val, err = _arch_pair(_ArchPointData(z, eps, g), _ArchPointData(w, eps, g))
        if err > QUAD_TOL:
            warnings.warn(f"quadrature refinements differ by {err:.2e}", QuadratureWarning)
        return val
    S, T = pi_epsilon(z, eps, mode), pi_epsilon(w, eps, mode)
    return phi_g(S, T, g)


def regularized_fekete_sum(Z, eps, g: Weight) -> EnergyValue:
    """``(Z_eps, Z_eps)_g``: full double sum including the diagonal."""
    Z = _as_divisor(Z)
    mode = g.mode
    eps = _check_eps(eps, mode)
    pts = [z if z is INF else as_scalar(z, mode) for z in Z.points]
    if mode.archimedean:
        data = [_ArchPointData(z, eps, g) for z in pts]
        total, err = 0.0, 0.0
        for i, (a, mi) in enumerate(zip(data, Z.mults)):
            for j in range(i, len(data)):
                v, e = _arch_pair(a, data[j])
                k = 1 if i == j else 2
                total += k * mi * Z.mults[j] * v
                err += k * mi * Z.mults[j] * e
        if err > QUAD_TOL:
            warnings.warn(f"quadrature refinements differ by {err:.2e}", QuadratureWarning)
        return EnergyValue(total, quad_error=err)
    p = mode.p
    disks = [pi_epsilon(z, eps, mode) for z in pts]
    if g.exact is not None:
        ex = Fraction(0)
        for i, (S, mi) in enumerate(zip(disks, Z.mults)):
            for j in range(i, len(disks)):
                c = phi_g_exact(S, disks[j], g)
                if c is None:
                    break
                ex += (1 if i == j else 2) * mi * Z.mults[j] * c
            else:
                continue
            break
        else:
            return EnergyValue.from_exact(ex, p)
    total = 0.0
    for i, (S, mi) in enumerate(zip(disks, Z.mults)):
        for j in range(i, len(disks)):
            k = 1 if i == j else 2
            total += k * mi * Z.mults[j] * phi_g(S, disks[j], g)
    return EnergyValue(total)


# --- modulus of continuity and the two regularized estimates ---------------

def modulus_eta_hat(g: Weight, F, eps) -> float:
    """Analytic upper bound for the restricted modulus ``eta_hat_{g,F}(eps)``.

    ``eta <= C' eps**(1/kappa)`` with ``C' = C 2**(1/kappa)`` (p-adic) or
    ``C' = C`` (archimedean); the archimedean modulus adds ``eps``.
    """
    e = float(eps)
    if not 0.0 <= e <= 1.0:
        raise PreconditionError("eps must lie in [0, 1]")
    if g.holder is None:
        if g.constant is None:
            raise MissingModulusError(
                f"weight {g.label!r} has no Hölder data; supply (C, kappa) to bound its modulus"
            )
        C, kappa = 0.0, 1.0
    else:
        C, kappa = g.holder
    Cp = C if g.mode.archimedean else C * 2.0 ** (1.0 / kappa)
    eta = Cp * e ** (1.0 / kappa)
    return eta + (e if g.mode.archimedean else 0.0)


def c_prime(g: Weight) -> float:
    if g.holder is None:
        raise MissingModulusError(f"weight {g.label!r} has no Hölder data")
    C, kappa = g.holder
    return C if g.mode.archimedean else C * 2.0 ** (1.0 / kappa)


def sampled_eta(g: Weight, F, eps, samples: int = 64, seed: int = 0) -> float:
    """Sampled lower estimate of ``eta_{g,F}(eps)`` (diagnostic only)."""
    F = _as_divisor(F)
    rng = np.random.default_rng(seed)
    mode = g.mode
    e = float(eps)
    best = 0.0
    for z in F.points:
        gz = g(z)
        if mode.archimedean:
            for _ in range(samples):
                th, u = rng.uniform(0, 2 * math.pi), rng.uniform(0, 1)
                if z is INF:
                    w = cmath.exp(1j * th) / max(u * e, 1e-300)
                    w = w if abs(w) < 1e300 else INF
                else:
                    zc = complex(z)
                    w = zc + u * e * (1 + abs(zc) ** 2) * cmath.exp(1j * th)
                if small_metric(z, w, mode) <= e:
                    best = max(best, abs(gz - g(w)))
        else:
            p = mode.p
            k0 = math.ceil(-math.log(e, p) - 1e-12) if e < 1 else 0
            for k in range(k0, k0 + 8):
                S = pi_epsilon(z, PAdicMag(p, k), mode)
                if small_metric(z, S, mode) <= e:
                    best = max(best, abs(gz - g(S)))
    return best


def pairwise_lower_bound(z, w, eps, g: Weight) -> float:
    """Lower bound for :func:`regularized_pair_energy` in its three cases.

    ``z != w``: ``Phi_g(z,w) - 2 eta``; ``z = w`` affine:
    ``log eps + 2 log[z,∞] - 2 g(z) - 2 eta``; ``z = w = ∞``:
    ``log eps - 2 g(∞) - 2 eta``, with ``eta = eta_hat(eps)``.
    """
    mode = g.mode
    e = float(_check_eps(eps, mode))
    eta = modulus_eta_hat(g, None, e)
    z = z if z is INF else as_scalar(z, mode)
    w = w if w is INF else as_scalar(w, mode)
    same = (z is INF and w is INF) or (z is not INF and w is not INF and z == w)
    if not same:
        return phi_g(z, w, g) - 2 * eta
    if z is INF:
        return math.log(e) - 2 * g(INF) - 2 * eta
    return math.log(e) + 2 * to_log_real(kernel_can(z, INF, mode)) - 2 * g(z) - 2 * eta


def negativity_check(Z, eps, g: Weight, tol: float | None = None) -> BoundReport:
    """``(Z_eps, Z_eps)_g <= 0`` for a normalized weight."""
    if not g.normalized:
        raise PreconditionError(f"weight {g.label!r} is not declared normalized")
    val = regularized_fekete_sum(Z, eps, g)
    if tol is None:
        tol = 1e-6 if g.mode.archimedean else 0.0
    return make_report(
        "negativity", val.approx, 0.0, lhs_exact=val.exact,
        rhs_exact=Fraction(0) if val.exact is not None else None,
        tol=tol, weight=g.label, eps=float(eps), quad_error=val.quad_error,
    )


def lower_bound_rhs(Z, eps, g: Weight):
    """Right side of the regularized lower estimate as (float, exact-or-None)."""
    Z = _as_divisor(Z)
    mode = g.mode
    e = _check_eps(eps, mode)
    eta = modulus_eta_hat(g, Z, float(e))
    fs = fekete_sum(Z, g)
    pts = [z if z is INF else as_scalar(z, mode) for z in Z.points]
    log_inf = [0.0 if z is INF else to_log_real(kernel_can(z, INF, mode)) for z in pts]
    gv = [g(z) for z in pts]
    logeps = math.log(float(e)) if mode.archimedean else e.log()
    rhs = (fs.approx + 2 * sum(m * m * li for m, li in zip(Z.mults, log_inf))
           - 2 * sum(m * m * gi for m, gi in zip(Z.mults, gv))
           + logeps * Z.diag_mass - 2 * Z.deg ** 2 * eta)
    exact = None
    gex = [_weight_exact(g, z) for z in pts]
    if (not mode.archimedean and fs.exact is not None and eta == 0.0
            and all(c is not None for c in gex)):
        li_ex = [Fraction(0) if z is INF else log_coeff(kernel_can(z, INF, mode)) for z in pts]
        exact = (fs.exact + 2 * sum(m * m * li for m, li in zip(Z.mults, li_ex))
                 - 2 * sum(m * m * c for m, c in zip(Z.mults, gex))
                 + e.log_coeff() * Z.diag_mass)
    return rhs, exact, eta


def lower_bound_check(Z, eps, g: Weight, tol: float | None = None) -> BoundReport:
    """``(Z_eps, Z_eps)_g >=`` the diagonal-corrected Fekete sum bound."""
    lhs = regularized_fekete_sum(Z, eps, g)
    rhs, rhs_exact, eta = lower_bound_rhs(Z, eps, g)
    if tol is None:
        tol = 1e-6 if g.mode.archimedean else 1e-12
    return make_report(
        "regularized_lower_bound", lhs.approx, rhs, relation=">=",
        lhs_exact=lhs.exact if rhs_exact is not None else None, rhs_exact=rhs_exact,
        lhs_is_exact=lhs.exact is not None, tol=tol,
        weight=g.label, eps=float(eps), eta_hat=eta, quad_error=lhs.quad_error,
    )
