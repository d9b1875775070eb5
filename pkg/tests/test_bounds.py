import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkfekete.bounds import (asymp_ratio_scan, epsilon_scan, finite_variant_check,
                               holder_bound_check, holder_rhs, mahler_classical_check,
                               mahler_general_check)
from berkfekete.dynamics import PolyMap, green_weight
from berkfekete.errors import PreconditionError
from berkfekete.potential import G0_LIPSCHITZ, Divisor, fekete_sum, g0_weight, zero_weight
from berkfekete.report import BoundReport
from berkfekete.scalars import ARCH, FieldMode
from berkfekete.search import roots_of_unity
from gen import rand_arch_points, rand_padic_points

F = Fraction
P3 = FieldMode.padic(3)
LOG2, LOG3 = math.log(2), math.log(3)
g0 = g0_weight()
seeds = st.integers(0, 2 ** 32 - 1)


def test_classical_examples():
    for mode in (ARCH, P3):
        rep = mahler_classical_check([0, 1], mode)
        assert rep.holds and rep.lhs == 0.0 and rep.rhs == pytest.approx(2 * LOG2)
        assert mahler_classical_check([5], mode).slack == 0.0
    rep = mahler_classical_check(roots_of_unity(7), ARCH)
    assert rep.holds and abs(rep.slack) < 1e-12
    with pytest.raises(PreconditionError):
        mahler_classical_check([1, 1], ARCH)


@given(seeds, st.sampled_from(["disk", "annulus", "mixed"]))
def test_classical_random_arch(seed, shape):
    rng = np.random.default_rng(seed)
    assert mahler_classical_check(rand_arch_points(rng, int(rng.integers(1, 30)), shape), ARCH).holds


@given(seeds, st.sampled_from([2, 3, 5]))
def test_classical_random_padic(seed, p):
    rng = np.random.default_rng(seed)
    pts = rand_padic_points(rng, p, int(rng.integers(1, 20)))
    rep = mahler_classical_check(pts, FieldMode.padic(p))
    assert rep.holds and rep.exactness == "exact"


def test_general_examples():
    rep = mahler_general_check(zero_weight(P3), [F(0), F(1)], 1)
    assert rep.exactness == "exact" and rep.lhs_exact == 0 == rep.rhs_exact and rep.holds
    rep = mahler_general_check(g0, [1, -1], 0.5)
    assert rep.holds and rep.slack > 0
    with pytest.raises(PreconditionError):
        mahler_general_check(g0, [1, -1], 2)
    with pytest.raises(PreconditionError):
        mahler_general_check(zero_weight(ARCH), [1, -1], 0.5)
    with pytest.raises(PreconditionError):
        mahler_general_check(g0, Divisor.from_pairs([(1, 2)]), 0.5)


def test_general_exact_rhs_for_prime_power_eps():
    rep = mahler_general_check(zero_weight(P3), [F(0), F(3), F(2)], F(1, 9))
    assert rep.rhs_exact == 6 and rep.lhs_exact == -2 and rep.holds


def test_holder_examples():
    rep = holder_bound_check(g0, [1, -1])
    assert rep.lhs == pytest.approx(2 * LOG2)
    assert rep.rhs == pytest.approx(2 * LOG2 + 4 * (G0_LIPSCHITZ + 1 + 0.5 * LOG2))
    assert rep.holds and rep.metadata["eps"] == 0.5
    rep = holder_bound_check(g0, [3j])
    assert rep.lhs == 0.0 and rep.rhs >= 0 and rep.holds


def test_holder_with_lambda_green_weight():
    # P_1 of z^2 + 2/9 over Q_3 is {1/3, 2/3}; the weight equals log[., ∞] there
    g = green_weight(PolyMap.f_lambda(2, F(2, 9), P3))
    pts = [F(1, 3), F(2, 3)]
    val = fekete_sum(pts, g)
    assert val.exact == 2
    rep = holder_bound_check(g, pts)
    assert rep.holds and rep.metadata["holder_estimated"]
    assert rep.metadata["kappa"] == pytest.approx(LOG3 / LOG2 + 0.01)


def test_holder_rhs_padic_doubles_constant():
    # eps_K = 0 off the archimedean place and C' = C 2**(1/kappa)
    assert holder_rhs(zero_weight(P3), 4) == pytest.approx(4 * math.log(4))
    g = replace(zero_weight(P3), holder=(1.0, 1.0))
    assert holder_rhs(g, 4) == pytest.approx(4 * math.log(4) + 8 * 2.0)


def test_finite_variant_examples():
    rep = finite_variant_check(zero_weight(P3), [F(0), F(1)], 1)
    assert rep.metadata["extra_term"] == 0.0 and rep.rhs == rep.metadata["sharp_rhs"] and rep.holds
    rep = finite_variant_check(zero_weight(P3), [F(1, 3), F(1)], 1)
    assert rep.metadata["extra_term"] == pytest.approx(2 * LOG3) and rep.rhs_exact == 2
    rep = finite_variant_check(g0, [2], 0.5)
    assert rep.metadata["extra_term"] == pytest.approx(math.log(5)) and rep.metadata["sharper"]
    with pytest.raises(PreconditionError):
        from berkfekete.berkovich import INF
        finite_variant_check(g0, [INF, 1], 0.5)


@given(seeds, st.floats(0.01, 1.0))
def test_general_and_finite_random_arch(seed, eps):
    rng = np.random.default_rng(seed)
    pts = rand_arch_points(rng, int(rng.integers(1, 25)))
    assert mahler_general_check(g0, pts, eps).holds
    rep = finite_variant_check(g0, pts, eps)
    assert rep.holds and rep.rhs >= rep.metadata["sharp_rhs"]
    assert holder_bound_check(g0, pts).holds


@given(seeds, st.integers(0, 5))
def test_general_random_padic(seed, k):
    rng = np.random.default_rng(seed)
    p = int(rng.choice([2, 3, 5]))
    g = zero_weight(FieldMode.padic(p))
    pts = rand_padic_points(rng, p, int(rng.integers(1, 25)))
    rep = mahler_general_check(g, pts, F(1, p ** k))
    assert rep.holds and rep.exactness == "exact"
    assert finite_variant_check(g, pts, F(1, p ** k)).holds
    assert holder_bound_check(g, pts).holds


def test_asymp_scan_roots_of_unity():
    rows = asymp_ratio_scan(g0, [roots_of_unity(N) for N in range(2, 65)])
    assert [r.N for r in rows] == list(range(2, 65))
    for r in rows:
        assert r.holds and r.ratio == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(PreconditionError):
        asymp_ratio_scan(g0, [[1]])
    assert asymp_ratio_scan(g0, []) == []


def test_epsilon_scan_minimum():
    # slack(eps) = N log(1/eps) + 2N^2 (C+1) eps + const is minimized at eps = 1/(2N(C+1))
    N = 16
    pts = roots_of_unity(N)
    grid = [2.0 ** -k for k in range(0, 12)]
    rows = epsilon_scan(g0, pts, grid)
    best = min(rows, key=lambda r: r[1])[0]
    target = 1 / (2 * N * (G0_LIPSCHITZ + 1))
    assert abs(math.log2(best) - math.log2(target)) <= 1
    assert all(s > 0 for _, s in rows)


def test_report_json_round_trip():
    rep = mahler_general_check(zero_weight(P3), [F(0), F(1)], F(1, 3))
    again = BoundReport.from_json(rep.to_json())
    assert again == rep
