"""Checkers for the Fekete-sum inequalities.

Each checker returns a :class:`~berkfekete.report.BoundReport`.  Left sides
that are exact rational multiples of ``log p`` are decided exactly against
exact right sides when those exist; otherwise the comparison is in floating
point with the padding documented in :mod:`berkfekete.report`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .berkovich import INF, kernel_can
from .errors import MissingModulusError, PreconditionError
from .potential import (Divisor, Weight, _as_divisor, as_padic_eps, c_prime, fekete_sum,
                        modulus_eta_hat, zero_weight)
from .report import BoundReport, make_report
from .scalars import FieldMode, as_scalar, log_coeff, to_log_real

__all__ = [
    "mahler_classical_check",
    "mahler_general_check",
    "holder_bound_check",
    "finite_variant_check",
    "asymp_ratio_scan",
    "epsilon_scan",
    "ScanRow",
    "holder_rhs",
]


def _nlogn(n: int) -> float:
    return n * math.log(n) if n > 1 else 0.0


def mahler_classical_check(points, mode: FieldMode) -> BoundReport:
    """``sum_{i != j} log|z_i - z_j| - log+|z_i| - log+|z_j| <= N log N``."""
    pts = [as_scalar(z, mode) for z in points]
    if any(z is INF for z in points):
        raise PreconditionError("points must be affine")
    if len(set(pts)) != len(pts):
        raise PreconditionError("points must be distinct")
    N = len(pts)
    if not mode.archimedean:
        # for p-adic points log[z,w] = log|z-w| - log+|z| - log+|w| exactly
        val = fekete_sum(pts, zero_weight(mode))
        return make_report("mahler_classical", val.approx, _nlogn(N), lhs_exact=None,
                           lhs_is_exact=True, N=N, mode=str(mode), lhs_log_p=str(val.exact))
    z = np.array(pts, dtype=complex)
    lp = np.log(np.maximum(1.0, np.abs(z)))
    lhs = -2.0 * (N - 1) * float(np.sum(lp))
    if N > 1:
        D = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(D, 1.0)
        lhs += float(np.sum(np.log(D)))
    return make_report("mahler_classical", lhs, _nlogn(N), N=N, mode=str(mode))


def _eps_value(eps, mode):
    e = float(eps)
    if not 0.0 < e <= 1.0:
        raise PreconditionError("eps must lie in (0, 1]")
    return e


def _constants(g: Weight):
    if g.sup_abs is None:
        raise MissingModulusError(f"weight {g.label!r} has no sup bound")
    if g.holder is None and g.constant is None:
        raise MissingModulusError(f"weight {g.label!r} has no Hölder data")
    C, kappa = g.holder if g.holder is not None else (0.0, 1.0)
    Cp = c_prime(g) if g.holder is not None else 0.0
    return {"C": C, "C_prime": Cp, "kappa": kappa, "eps_K": g.mode.eps_K, "sup_abs": g.sup_abs}


def _reduced(F) -> Divisor:
    F = _as_divisor(F)
    if not F.is_reduced():
        raise PreconditionError("F must have all multiplicities equal to 1")
    return F


def _general_rhs(g: Weight, F: Divisor, eps):
    """Right side ``N log(1/eps) + 2 N^2 eta_hat(eps) + 2 N sup|g|`` (float, exact)."""
    N = len(F)
    e = _eps_value(eps, g.mode)
    eta = modulus_eta_hat(g, F, e)
    rhs = N * -math.log(e) + 2 * N * N * eta + 2 * N * g.sup_abs
    exact = None
    if not g.mode.archimedean and eta == 0.0 and g.sup_abs == 0.0:
        try:
            m = as_padic_eps(Fraction(eps), g.mode)
            exact = -N * m.log_coeff()
        except (PreconditionError, ValueError, TypeError):
            exact = None
    return rhs, exact, eta


def mahler_general_check(g: Weight, F, eps) -> BoundReport:
    """``(F,F)_g <= #F log(1/eps) + 2(#F)^2 eta_hat(eps) + 2 #F sup|g|``."""
    if not g.normalized:
        raise PreconditionError(f"weight {g.label!r} is not declared normalized")
    F = _reduced(F)
    consts = _constants(g)
    rhs, rhs_exact, eta = _general_rhs(g, F, eps)
    lhs = fekete_sum(F, g)
    return make_report(
        "mahler_general", lhs.approx, rhs,
        lhs_exact=lhs.exact if rhs_exact is not None else None, rhs_exact=rhs_exact,
        lhs_is_exact=lhs.exact is not None, sup_estimated=g.sup_estimated,
        weight=g.label, N=len(F), eps=float(eps), eta_hat=eta, **consts,
    )


def holder_rhs(g: Weight, N: int) -> float:
    """``kappa N log N + 2N(C' + eps_K N**(1-kappa) + sup|g|)``."""
    c = _constants(g)
    kappa = c["kappa"]
    return kappa * _nlogn(N) + 2 * N * (c["C_prime"] + c["eps_K"] * N ** (1 - kappa) + c["sup_abs"])


def holder_bound_check(g: Weight, F) -> BoundReport:
    """Hölder form of the bound, with ``eps = (#F)**-kappa`` built in."""
    if not g.normalized:
        raise PreconditionError(f"weight {g.label!r} is not declared normalized")
    F = _reduced(F)
    consts = _constants(g)
    if consts["kappa"] < 1:
        raise PreconditionError("kappa must be at least 1")
    N = len(F)
    lhs = fekete_sum(F, g)
    return make_report(
        "holder_bound", lhs.approx, holder_rhs(g, N), lhs_is_exact=lhs.exact is not None,
        sup_estimated=g.sup_estimated, weight=g.label, N=N,
        eps=float(N) ** -consts["kappa"], holder_estimated=g.holder_estimated, **consts,
    )


def finite_variant_check(g: Weight, F, eps) -> BoundReport:
    """Variant with the extra term ``-2 sum_{w in F} log[w, ∞]`` for ``∞ ∉ F``."""
    F = _reduced(F)
    if any(z is INF for z in F.points):
        raise PreconditionError("F must not contain ∞")
    sharp = mahler_general_check(g, F, eps)
    mode = g.mode
    pts = [as_scalar(z, mode) for z in F.points]
    extra = -2.0 * sum(to_log_real(kernel_can(z, INF, mode)) for z in pts)
    rhs_exact = None
    if sharp.rhs_exact is not None:
        rhs_exact = sharp.rhs_exact - 2 * sum(log_coeff(kernel_can(z, INF, mode)) for z in pts)
    rhs = sharp.rhs + extra
    rep = make_report(
        "finite_variant", sharp.lhs, rhs, lhs_exact=sharp.lhs_exact, rhs_exact=rhs_exact,
        lhs_is_exact=sharp.exactness == "exact", sup_estimated=g.sup_estimated,
        extra_term=extra, sharp_rhs=sharp.rhs, sharper=rhs >= sharp.rhs, **sharp.metadata,
    )
    return rep


@dataclass(frozen=True)
class ScanRow:
    N: int
    value: float
    ratio: float
    bound_ratio: float
    holds: bool

    def to_json(self) -> dict:
        return {"N": self.N, "value": self.value, "ratio": self.ratio,
                "bound_ratio": self.bound_ratio, "holds": self.holds}


def asymp_ratio_scan(g: Weight, family) -> list:
    """Rows ``(N, (F,F)_g/(N log N), kappa + 2(C' + eps_K N**(1-kappa) + sup)/log N)``."""
    c = _constants(g)
    rows = []
    for F in family:
        F = _reduced(F)
        N = len(F)
        if N < 2:
            raise PreconditionError("each divisor needs at least two points")
        val = fekete_sum(F, g).approx
        ratio = val / _nlogn(N)
        bound = c["kappa"] + 2 * (c["C_prime"] + c["eps_K"] * N ** (1 - c["kappa"])
                                  + c["sup_abs"]) / math.log(N)
        rows.append(ScanRow(N, val, ratio, bound, ratio <= bound * (1 + 1e-12)))
    return sorted(rows, key=lambda r: r.N)


def epsilon_scan(g: Weight, F, eps_grid) -> list:
    """``(eps, slack)`` of :func:`mahler_general_check` over a grid of eps."""
    return [(float(e), mahler_general_check(g, F, e).slack) for e in eps_grid]
