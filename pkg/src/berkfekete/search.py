"""Local search for large Fekete sums on the Riemann sphere.

Points live on the unit sphere in R^3 with the north pole as ∞, so that
``[z, w] = |x - y| / 2`` and no chart change is ever needed.  One point is
moved at a time; a move is kept only if it strictly increases ``(F,F)_g``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .berkovich import INF
from .bounds import _constants, holder_bound_check
from .errors import ConfigurationError, UnsupportedModeError
from .potential import Divisor, Weight, fekete_sum
from .report import BoundReport

__all__ = ["SearchConfig", "SearchResult", "fekete_maximize", "ratio_report",
           "roots_of_unity", "to_sphere", "from_sphere"]

COLLISION = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    """Budget and schedule for :func:`fekete_maximize`.

    The step after ``k`` proposals is ``initial_step * step_decay**k``.
    """

    N: int
    iterations: int = 10_000
    restarts: int = 8
    initial_step: float = 0.5
    step_decay: float = 0.9995
    seed: int = 0
    include_structured_seeds: bool = True
    threads: int | None = None

    def __post_init__(self):
        if self.N < 2:
            raise ConfigurationError("N must be at least 2")
        if self.iterations < 0 or self.restarts < 1:
            raise ConfigurationError("need iterations >= 0 and restarts >= 1")
        if not self.initial_step > 0 or not 0 < self.step_decay < 1:
            raise ConfigurationError("need initial_step > 0 and step_decay in (0, 1)")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")


@dataclass
class SearchResult:
    best_F: Divisor
    best_value: float
    ratio: float
    bound_report: BoundReport
    config: SearchConfig
    restart_values: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        pts = [None if z is INF else {"re": complex(z).real, "im": complex(z).imag}
               for z in self.best_F.points]
        return {
            "config": asdict(self.config),
            "best_value": self.best_value,
            "ratio": self.ratio,
            "points": [{"type": "infinity"} if z is None else {"type": "classical", "value": z}
                       for z in pts],
            "restart_values": self.restart_values,
            "bound_report": self.bound_report.to_json(),
        }


def roots_of_unity(N: int) -> list:
    return list(np.exp(2j * np.pi * np.arange(N) / N))


def to_sphere(z) -> np.ndarray:
    """Inverse stereographic projection with ∞ at the north pole."""
    if z is INF:
        return np.array([0.0, 0.0, 1.0])
    z = complex(z)
    s = 1.0 + abs(z) ** 2
    return np.array([2 * z.real / s, 2 * z.imag / s, (abs(z) ** 2 - 1) / s])


def from_sphere(x):
    if x[2] >= 1.0 - 1e-15:
        return INF
    if x[2] > 0:
        # avoids the cancellation in 1 - x[2] near the pole
        return (1.0 + x[2]) / complex(x[0], -x[1])
    return complex(x[0], x[1]) / (1.0 - x[2])


def _weights(g: Weight, X: np.ndarray) -> np.ndarray:
    pole = X[:, 2] >= 1.0 - 1e-15
    out = np.empty(len(X))
    if np.any(~pole):
        Y = X[~pole]
        north = Y[:, 2] > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(north, (1.0 + Y[:, 2]) / (Y[:, 0] - 1j * Y[:, 1]),
                         (Y[:, 0] + 1j * Y[:, 1]) / (1.0 - Y[:, 2]))
        out[~pole] = g.values(z)
    if np.any(pole):
        out[pole] = g(INF)
    return out


def _energy(X, gv):
    D = np.linalg.norm(X[:, None, :] - X[None, :, :], axis=-1) / 2
    np.fill_diagonal(D, 1.0)
    N = len(X)
    return float(np.sum(np.log(D))) - 2.0 * (N - 1) * float(np.sum(gv))


def _random_config(rng, N):
    X = rng.normal(size=(N, 3))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _local_search(g: Weight, X: np.ndarray, cfg: SearchConfig, rng) -> tuple:
    N = cfg.N
    X = X.copy()
    gv = _weights(g, X)
    value = _energy(X, gv)
    trace = [value]
    step = cfg.initial_step
    idx = np.arange(N)
    for it in range(cfg.iterations):
        i = it % N
        prop = X[i] + step * rng.normal(size=3)
        step *= cfg.step_decay
        nrm = np.linalg.norm(prop)
        if nrm == 0.0:
            continue
        prop /= nrm
        others = idx != i
        d_new = np.linalg.norm(X[others] - prop, axis=1) / 2
        if d_new.min() < COLLISION:
            continue
        g_new = _weights(g, prop[None, :])[0]
        d_old = np.linalg.norm(X[others] - X[i], axis=1) / 2
        g_oth = gv[others]
        delta = 2.0 * (float(np.sum(np.log(d_new) - g_new - g_oth))
                       - float(np.sum(np.log(d_old) - gv[i] - g_oth)))
        if delta > 0.0:
            X[i], gv[i] = prop, g_new
            value += delta
        if (it + 1) % N == 0:
            trace.append(value)
    return X, value, trace


def _divisor(X) -> Divisor:
    return Divisor.from_points(from_sphere(x) for x in X)


def _threads(cfg: SearchConfig) -> int:
    if cfg.threads is not None:
        return max(1, cfg.threads)
    env = os.environ.get("BERKFEKETE_THREADS")
    if env:
        return max(1, int(env))
    return min(cfg.restarts, os.cpu_count() or 1)


def fekete_maximize(g: Weight, cfg: SearchConfig) -> SearchResult:
    """Best ``(F,F)_g`` found over ``cfg.restarts`` local searches.

    With structured seeds, restart 0 starts from the roots of unity and a
    final pass polishes the best configuration found; the roots of unity
    remain a candidate, so the result never falls below their value.
    """
    if not g.mode.archimedean:
        raise UnsupportedModeError("configuration search runs in archimedean mode only")
    if g.holder is None:
        raise UnsupportedModeError(f"weight {g.label!r} needs Hölder data for its bound report")
    N = cfg.N

    def run(r):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, r]))
        if r == 0 and cfg.include_structured_seeds:
            X0 = np.array([to_sphere(z) for z in roots_of_unity(N)])
        else:
            X0 = _random_config(rng, N)
        return _local_search(g, X0, cfg, rng)

    with ThreadPoolExecutor(max_workers=_threads(cfg)) as ex:
        runs = list(ex.map(run, range(cfg.restarts)))

    candidates = [(_divisor(X), tr) for X, _, tr in runs]
    trace = list(runs[0][2])
    if cfg.include_structured_seeds:
        best_r = max(range(len(runs)), key=lambda r: (runs[r][1], -r))
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, cfg.restarts]))
        polish = replace_step(cfg, cfg.initial_step * 0.1)
        Xp, _, tr = _local_search(g, runs[best_r][0], polish, rng)
        candidates.append((_divisor(Xp), tr))
        candidates.append((Divisor.from_points(roots_of_unity(N)), []))
    scored = [(fekete_sum(F, g).approx, -k, F) for k, (F, _) in enumerate(candidates)]
    best_value, _, best_F = max(scored, key=lambda t: (t[0], t[1]))
    return SearchResult(
        best_F=best_F, best_value=best_value, ratio=best_value / (N * math.log(N)),
        bound_report=holder_bound_check(g, best_F), config=cfg,
        restart_values=[v for v, _, _ in scored], trace=trace,
    )


def replace_step(cfg: SearchConfig, step: float) -> SearchConfig:
    return replace(cfg, initial_step=step)


def ratio_report(g: Weight, N_list, base: SearchConfig | None = None) -> list:
    """Rows ``{N, best_value, ratio, envelope, holds}`` sorted by N."""
    c = _constants(g) if N_list else None
    rows = []
    for N in sorted(N_list):
        cfg = SearchConfig(N=N) if base is None else replace(base, N=N)
        res = fekete_maximize(g, cfg)
        env = c["kappa"] + 2 * (c["C_prime"] + c["eps_K"] * N ** (1 - c["kappa"])
                                + c["sup_abs"]) / math.log(N)
        rows.append({"N": N, "best_value": res.best_value, "ratio": res.ratio,
                     "envelope": env, "holds": res.bound_report.holds})
    return rows
