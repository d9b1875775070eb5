"""Polynomial dynamics: orbits of points and disks, escape-rate Green
functions, Lipschitz constants of iterates and periodic-point Fekete sums.

Green functions follow the escape-rate formula
``g_f(S) = -lim log[f^n S, ∞]/d^n + log[S, ∞]``.  In p-adic mode the limit
is reached exactly: once ``rho(S) = max(|a|, r)`` exceeds the escape radius
the top coefficient dominates forever, and a repeated orbit element means
the orbit is bounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .berkovich import INF, Disk, chordal, kernel_can, small_metric
from .errors import (NewtonPolygonError, NotSquarefreeError, PreconditionError,
                     UnsupportedModeError)
from .exactpoly import (RatPoly, discriminant, newton_polygon, poly_iterate,
                        squarefree_check)
from .potential import G0_LIPSCHITZ, EnergyValue, Weight
from .scalars import FieldMode, PAdicMag, _vint, as_scalar, log_coeff, padic_valuation

__all__ = [
    "PolyMap",
    "GreenEstimate",
    "poly_image_disk",
    "escape_green",
    "green_weight",
    "chordal_lipschitz",
    "holder_exponent",
    "periodic_fekete",
    "periodic_table",
    "PeriodicReport",
]

ESCAPE_RADIUS = 1e8
HEIGHT_CAP_BITS = 512
DISK_PRECISION = 64
SAFETY = 1.1


@dataclass(frozen=True)
class PolyMap:
    """Polynomial ``sum coeffs[k] z**k`` of degree at least 2.

    ``allow_low_degree`` exists for tests of degenerate maps only.
    """

    coeffs: tuple
    mode: FieldMode
    allow_low_degree: bool = False

    def __post_init__(self):
        cs = [as_scalar(c, self.mode) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        if len(cs) < 2 or (len(cs) < 3 and not self.allow_low_degree):
            raise PreconditionError("f must have degree at least 2")

    @classmethod
    def f_lambda(cls, d: int, lam, mode: FieldMode) -> "PolyMap":
        """``z**d + lam``."""
        return cls((lam,) + (0,) * (d - 1) + (1,), mode)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def __call__(self, z):
        if z is INF:
            return INF
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def ratpoly(self) -> RatPoly:
        if self.mode.archimedean:
            raise UnsupportedModeError("exact polynomial needs p-adic mode")
        return RatPoly(self.coeffs)

    def lambda_form(self):
        """``(d, lam)`` if this map is ``z**d + lam`` with ``lam != 0``, else ``None``."""
        cs = self.coeffs
        if cs[-1] == 1 and cs[0] != 0 and all(c == 0 for c in cs[1:-1]):
            return self.degree, cs[0]
        return None

    def to_json(self) -> dict:
        if self.mode.archimedean:
            return {"coeffs": [{"re": complex(c).real, "im": complex(c).imag} for c in self.coeffs]}
        return {"coeffs": [str(c) for c in self.coeffs]}


def _rho(S, p) -> PAdicMag:
    if isinstance(S, Disk):
        return max(_mag(S.center, p), S.radius)
    return _mag(S, p)


def _mag(q, p) -> PAdicMag:
    q = Fraction(q)
    if q == 0:
        return PAdicMag.zero(p)
    return PAdicMag(p, _vint(q.numerator, p) - _vint(q.denominator, p))


def _truncate(a: Fraction, t, p: int) -> Fraction:
    """A low-height rational within ``p**-t`` of ``a``."""
    k = math.ceil(t)
    s = _vint(a.denominator, p)
    if k + s <= 0:
        return Fraction(0)
    unit_den = a.denominator // p ** s
    mod = p ** (k + s)
    return Fraction(a.numerator * pow(unit_den, -1, mod) % mod, p ** s)


def poly_image_disk(f: PolyMap, S):
    """Image of a disk point: ``D(f(a), max_k |c_k(a)| r**k)``."""
    if f.mode.archimedean:
        raise UnsupportedModeError("disk images need p-adic mode")
    p = f.mode.p
    if S is INF:
        return INF
    if not isinstance(S, Disk):
        return f(Fraction(S))
    a, r = S.center, S.radius
    tay = f.ratpoly().taylor(a).coeffs
    rad = max((_mag(c, p) * r ** k for k, c in enumerate(tay) if k >= 1 and c != 0),
              default=PAdicMag.zero(p))
    fa = tay[0] if tay else Fraction(0)
    if rad.is_zero:
        return fa
    return Disk(fa, rad)


@dataclass(frozen=True)
class GreenEstimate:
    """Escape-rate value with its truncation error.

    ``exact`` holds the rational ``c`` with value ``c log p`` when the
    p-adic iteration settled the limit exactly.
    """

    value: float
    error: float
    iterations: int
    converged: bool
    exact: Fraction | None = None


def _escape_radius(f: PolyMap) -> PAdicMag:
    p, d = f.mode.p, f.degree
    ad = _mag(f.lc, p)
    R = max(PAdicMag.one(p), ad ** Fraction(-1, d - 1))
    for k, c in enumerate(f.coeffs[:-1]):
        if c != 0:
            R = max(R, (_mag(c, p) / ad) ** Fraction(1, d - k))
    return R


def _padic_escape(f: PolyMap, S, n_max: int) -> GreenEstimate:
    p, d = f.mode.p, f.degree
    R = _escape_radius(f)
    c = -Fraction(padic_valuation(f.lc, p)) / (d - 1)
    inf_term = log_coeff(kernel_can(S, INF, f.mode))
    logp = math.log(p)

    def done(G, n):
        return GreenEstimate(float(G + inf_term) * logp, 0.0, n, True, G + inf_term)

    # f(D(0,R)) inside D(0,R) makes every orbit that enters D(0,R) bounded
    invariant = _rho(poly_image_disk(f, Disk(Fraction(0), R)), p) <= R
    cur, upper_only, seen = S, False, set()
    for n in range(n_max + 1):
        rho = _rho(cur, p)
        if invariant and rho <= R:
            return done(Fraction(0), n)
        if rho > R:
            G = (rho.log_coeff() + c) / Fraction(d) ** n
            if not upper_only:
                return done(G, n)
            half = float(G) * logp / 2
            return GreenEstimate(half + float(inf_term) * logp, half, n, half <= 1e-12)
        if cur in seen:
            return done(Fraction(0), n)
        seen.add(cur)
        if n == n_max:
            break
        cur = poly_image_disk(f, cur)
        if isinstance(cur, Disk):
            t = cur.radius.t
            if t > 0:
                cur = Disk(_truncate(cur.center, t, p), cur.radius)
        elif cur != 0 and cur.numerator.bit_length() + cur.denominator.bit_length() > HEIGHT_CAP_BITS:
            cur = Disk(_truncate(cur, DISK_PRECISION, p), PAdicMag(p, DISK_PRECISION))
            upper_only = True
    # orbit stayed inside the escape radius: 0 <= G(S) <= (log R + c)/d^n
    half = float(R.log_coeff() + c) * logp / d ** n_max / 2
    return GreenEstimate(half + float(inf_term) * logp, half, n_max, half <= 1e-12)


def _arch_escape(f: PolyMap, z: complex, n_max: int) -> GreenEstimate:
    d = f.degree
    cs = [complex(c) for c in f.coeffs]
    ad = abs(cs[-1])
    c = math.log(ad) / (d - 1)
    inf_term = -0.5 * math.log1p(abs(z) ** 2)
    w = complex(z)
    for n in range(n_max + 1):
        aw = abs(w)
        if aw > ESCAPE_RADIUS:
            s = sum(abs(cs[k] / cs[-1]) * aw ** (k - d) for k in range(d))
            if s < 0.5:
                delta = -math.log1p(-s)
                scale = float(d) ** n
                G = (math.log(aw) + c) / scale
                err = delta / ((d - 1) * scale)
                return GreenEstimate(G + inf_term, err, n, err <= 1e-12)
        if n == n_max:
            break
        w = f(w)
    # bounded orbit so far: G(z) = G(w)/d^n with 0 <= G(w) <= log+ R + |c|
    half = (math.log(ESCAPE_RADIUS) + abs(c)) / float(d) ** n_max / 2
    return GreenEstimate(half + inf_term, half, n_max, half <= 1e-12)


def escape_green(f: PolyMap, S, n_max: int = 64, tol: float = 1e-12) -> GreenEstimate:
    """Truncated escape-rate limit ``-lim log[f^n S,∞]/d^n + log[S,∞]``."""
    if S is INF:
        raise PreconditionError("escape_green needs an affine point")
    if f.mode.archimedean:
        if isinstance(S, Disk):
            raise UnsupportedModeError("disk points need p-adic mode")
        est = _arch_escape(f, complex(S), n_max)
    else:
        if not isinstance(S, Disk):
            S = as_scalar(S, f.mode)
        est = _padic_escape(f, S, n_max)
    if est.error > tol:
        return GreenEstimate(est.value, est.error, est.iterations, False, est.exact)
    return est


def _normalizer(f: PolyMap) -> float:
    """Constant making the escape-rate weight normalized: ``-log|a_d|/(2(d-1))``."""
    if f.mode.archimedean:
        return -math.log(abs(complex(f.lc))) / (2 * (f.degree - 1))
    return float(_normalizer_exact(f)) * math.log(f.mode.p)


def _normalizer_exact(f: PolyMap) -> Fraction:
    return Fraction(padic_valuation(f.lc, f.mode.p)) / (2 * (f.degree - 1))


def _is_monomial(f: PolyMap) -> bool:
    return f.lc == 1 and all(c == 0 for c in f.coeffs[:-1])


def _sphere_grid(n_theta: int = 129, n_phi: int = 256) -> np.ndarray:
    th = np.linspace(0.0, math.pi, n_theta)[1:-1]
    ph = 2 * math.pi * np.arange(n_phi) / n_phi
    return (np.tan(th / 2)[:, None] * np.exp(1j * ph)[None, :]).ravel()


def _padic_samples(p: int):
    pts = []
    for v in range(-4, 5):
        for u in (1, 2, p + 1, 1 - p):
            pts.append(Fraction(u) * Fraction(p) ** v)
    disks = [Disk(a, PAdicMag(p, k)) for a in (0, 1, Fraction(1, p), Fraction(1, p * p))
             for k in range(-3, 4)]
    return [Fraction(0)] + pts + disks


def green_weight(f: PolyMap, n_max: int = 64, delta: float = 0.01,
                 holder: tuple | None = None) -> Weight:
    """Normalized weight of the escape-rate Green function of ``f``.

    Sup and Hölder data are exact for ``z**d`` and for ``z**d + lam`` in
    p-adic mode; otherwise they are sampled, inflated by 1.1 and flagged.
    ``holder`` overrides the Hölder data.
    """
    mode = f.mode
    k = _normalizer(f)
    d = f.degree
    if mode.archimedean:
        at_inf = math.log(abs(complex(f.lc))) / (d - 1) + k
    else:
        k_ex = _normalizer_exact(f)
        at_inf_ex = -Fraction(padic_valuation(f.lc, mode.p)) / (d - 1) + k_ex
        at_inf = float(at_inf_ex) * math.log(mode.p)

    def evaluate(S):
        if S is INF:
            return at_inf
        return escape_green(f, S, n_max).value + k

    def exact_value(S):
        if S is INF:
            return at_inf_ex
        est = escape_green(f, S, n_max)
        return None if est.exact is None else est.exact + k_ex

    vectorized = None
    if mode.archimedean and _is_monomial(f):
        from .potential import _g0_vec

        vectorized = _g0_vec

    sup_est = hold_est = False
    lam_form = None if mode.archimedean else f.lambda_form()
    if _is_monomial(f):
        sup = 0.5 * math.log(2) if mode.archimedean else 0.0
        hd = (G0_LIPSCHITZ, 1.0) if mode.archimedean else (0.0, 1.0)
    elif lam_form is not None and _lambda_preconditions_hold(mode.p, *lam_form):
        dd, lam = lam_form
        sup = -padic_valuation(lam, mode.p) * math.log(mode.p) / dd
        kappa = holder_exponent(f, delta)
        hd = (_sampled_holder_constant(evaluate, mode, kappa), kappa)
        hold_est = True
    else:
        sup = _sampled_sup(evaluate, mode)
        sup_est = True
        kappa = holder_exponent(f, delta)
        hd = (_sampled_holder_constant(evaluate, mode, kappa), kappa)
        hold_est = True
    if holder is not None:
        hd, hold_est = tuple(holder), False
    return Weight(
        mode=mode, evaluate=evaluate, sup_abs=sup, holder=hd, normalized=True,
        label="green", exact=None if mode.archimedean else exact_value, vectorized=vectorized,
        kinks=((0j, 1.0),) if vectorized is not None else (),
        sup_estimated=sup_est, holder_estimated=hold_est,
    )


def _sampled_sup(evaluate, mode: FieldMode) -> float:
    if mode.archimedean:
        zs = _sphere_grid(33, 64)
        vals = [abs(evaluate(complex(z))) for z in zs] + [abs(evaluate(INF))]
    else:
        vals = [abs(evaluate(S)) for S in _padic_samples(mode.p)] + [abs(evaluate(INF))]
    return SAFETY * max(vals)


def _sampled_holder_constant(evaluate, mode: FieldMode, kappa: float, n: int = 400,
                             seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    best = 0.0
    if mode.archimedean:
        for _ in range(n):
            z = complex(*rng.normal(size=2)) * math.exp(rng.normal())
            w = z + complex(*rng.normal(size=2)) * 10.0 ** rng.uniform(-6, 0) * (1 + abs(z))
            dist = float(chordal(z, w, mode))
            if dist > 0:
                best = max(best, abs(evaluate(z) - evaluate(w)) / dist ** (1 / kappa))
    else:
        p = mode.p
        for _ in range(n):
            z = Fraction(int(rng.integers(-p ** 3, p ** 3)), p ** int(rng.integers(0, 3)))
            w = z + Fraction(int(rng.integers(1, p)) * p ** int(rng.integers(0, 6)))
            dist = float(chordal(z, w, mode))
            if dist > 0:
                best = max(best, abs(evaluate(z) - evaluate(w)) / dist ** (1 / kappa))
        # disk points: |g(z) - g(S)| <= C 2**(1/kappa) d(z, S)**(1/kappa)
        for S in _padic_samples(p):
            if isinstance(S, Disk):
                for z in (S.center, S.center + S.radius.p ** max(0, math.ceil(S.radius.t))):
                    dist = small_metric(z, S, mode)
                    if dist > 0:
                        best = max(best, abs(evaluate(z) - evaluate(S)) / (2 * dist) ** (1 / kappa))
    return SAFETY * best


def _lambda_preconditions_hold(p: int, d: int, lam) -> bool:
    if d % p == 0:
        return False
    e = -padic_valuation(lam, p)
    return e > 0 and p ** (e * (d - 1)) > d ** d


@dataclass(frozen=True)
class LipschitzEstimate:
    """``M_n`` with its provenance: exact closed form or inflated grid sup."""

    value: float
    exact: PAdicMag | None
    estimated: bool
    raw: float


def _spherical_derivative_sup(f: PolyMap, n: int, zs: np.ndarray) -> float:
    cs = np.array([complex(c) for c in f.coeffs])
    dcs = np.array([k * c for k, c in enumerate(cs)][1:])
    w = zs.astype(complex)
    logd = np.zeros(w.shape)
    with np.errstate(all="ignore"):
        for _ in range(n):
            fw = np.polyval(cs[::-1], w)
            dfw = np.polyval(dcs[::-1], w)
            logd += (np.log(np.abs(dfw)) + np.log1p(np.abs(w) ** 2) - np.log1p(np.abs(fw) ** 2))
            w = fw
    logd = np.where(np.isnan(logd), -np.inf, logd)
    return float(np.exp(np.max(logd)))


def chordal_lipschitz(f: PolyMap, n: int) -> LipschitzEstimate:
    """Upper estimate ``M_n`` for the chordal Lipschitz constant of ``f**n``."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    mode = f.mode
    if not mode.archimedean:
        form = f.lambda_form()
        if form is None or not _lambda_preconditions_hold(mode.p, *form):
            raise UnsupportedModeError("p-adic Lipschitz bounds are available only for z^d + lam "
                                       "with |d| = 1 and |lam| > d^(d/(d-1))")
        d, lam = form
        root = _mag(lam, mode.p) ** Fraction(1, d)
        m = root ** (n * (d - 1)) * root ** 2
        return LipschitzEstimate(float(m), m, False, float(m))
    raw = _spherical_derivative_sup(f, n, _sphere_grid(257, 512))
    return LipschitzEstimate(SAFETY * raw, None, True, raw)


@dataclass(frozen=True)
class HolderExponent:
    kappa: float
    limsup: float
    delta: float
    estimated: bool


def holder_exponent_data(f: PolyMap, delta: float = 0.01, n_values=range(1, 7)) -> HolderExponent:
    mode = f.mode
    if not mode.archimedean:
        form = f.lambda_form()
        if form is None or not _lambda_preconditions_hold(mode.p, *form):
            raise UnsupportedModeError("p-adic Hölder exponents are available only for z^d + lam")
        d, lam = form
        ls = (d - 1) / d * (-padic_valuation(lam, mode.p)) * math.log(mode.p) / math.log(d)
        return HolderExponent(ls + delta, ls, delta, False)
    d = f.degree
    zs = _sphere_grid(257, 512)
    n_last = max(n_values)
    ls = math.log(_spherical_derivative_sup(f, n_last, zs)) / (n_last * math.log(d))
    return HolderExponent(max(ls, 1.0) + delta, ls, delta, True)


def holder_exponent(f: PolyMap, delta: float = 0.01) -> float:
    """Hölder exponent ``limsup log(M_n**(1/n))/log d + delta``."""
    return holder_exponent_data(f, delta).kappa


@dataclass
class PeriodicReport:
    """Fekete sum of the period-``n`` points of ``z**d + lam``.

    ``ratio_coeff`` is the rational ``c`` with ``ratio = c log p / log d``.
    """

    p: int
    d: int
    lam: Fraction
    n: int
    count: int
    sum: EnergyValue
    predicted: EnergyValue
    match: bool
    ratio: float
    ratio_coeff: Fraction
    predicted_ratio_coeff: Fraction
    squarefree: bool
    slope: Fraction

    def to_json(self) -> dict:
        return {
            "p": self.p, "d": self.d, "lambda": str(self.lam), "n": self.n, "count": self.count,
            "sum": self.sum.to_json(), "predicted": self.predicted.to_json(), "match": self.match,
            "ratio": self.ratio, "ratio_coeff": str(self.ratio_coeff),
            "predicted_ratio_coeff": str(self.predicted_ratio_coeff),
            "squarefree": self.squarefree, "slope": str(self.slope),
        }


def periodic_fekete(p: int, d: int, lam, n: int, degree_cap: int = 64) -> PeriodicReport:
    """Exact Fekete sum over roots of ``f_lam^n(z) - z`` via the discriminant."""
    mode = FieldMode.padic(p)
    lam = Fraction(lam)
    if d < 2 or n < 1:
        raise PreconditionError("need d >= 2 and n >= 1")
    if d % p == 0:
        raise PreconditionError(f"|d|_p != 1: p = {p} divides d = {d}")
    if not _lambda_preconditions_hold(p, d, lam):
        raise PreconditionError(f"|lambda|_p = {float(_mag(lam, p)):g} is not above "
                                f"d^(d/(d-1)) = {d ** (d / (d - 1)):g}")
    if d ** n > degree_cap:
        raise PreconditionError(f"d^n = {d ** n} exceeds the degree cap {degree_cap}")
    f = PolyMap.f_lambda(d, lam, mode)
    F = poly_iterate(f.ratpoly(), n) - RatPoly([0, 1])
    if not squarefree_check(F):
        raise NotSquarefreeError(f"f^{n}(z) - z has repeated roots")
    e = -padic_valuation(lam, p)
    slope = Fraction(e, d)
    np_ = newton_polygon(F, p)
    if not np_.single_slope() or np_.segments[0][0] != slope:
        raise NewtonPolygonError("roots do not all lie on |z| = |lambda|^(1/d)")
    c = -padic_valuation(discriminant(F), p)
    pred = n * d ** n * Fraction(d - 1, d) * e
    ratio_coeff = Fraction(c, n * d ** n)
    return PeriodicReport(
        p=p, d=d, lam=lam, n=n, count=d ** n,
        sum=EnergyValue.from_exact(c, p), predicted=EnergyValue.from_exact(pred, p),
        match=(c == pred), ratio=float(ratio_coeff) * math.log(p) / math.log(d),
        ratio_coeff=ratio_coeff, predicted_ratio_coeff=Fraction(d - 1, d) * e,
        squarefree=True, slope=slope,
    )


def periodic_table(p: int, d: int, lam, n_max: int, degree_cap: int = 64) -> list:
    return [periodic_fekete(p, d, lam, n, degree_cap) for n in range(1, n_max + 1)]
