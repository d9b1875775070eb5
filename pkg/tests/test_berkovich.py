import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkfekete.berkovich import (INF, Disk, affine_apply, chordal, diam, gauss_point, hsia,
                                  in_isometry_group, iota, join, kernel_can, kernel_can_gromov,
                                  lemma_comparison_holds, median, mobius_apply, mobius_inverse,
                                  pi_epsilon, small_metric)
from berkfekete.errors import PreconditionError, UnsupportedModeError
from berkfekete.scalars import ARCH, FieldMode, PAdicMag
from gen import complexes, rand_berk, rand_padic_isometry, rand_rational, rand_unitary, rationals

F = Fraction
P3 = FieldMode.padic(3)


def D(a, t, p=3):
    return Disk(F(a), PAdicMag(p, t))


def test_chordal_examples():
    assert chordal(0, INF, ARCH) == 1.0
    assert chordal(0, INF, P3) == PAdicMag.one(3)
    assert chordal(1, 1j, ARCH) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert chordal(3, F(1, 3), P3) == PAdicMag.one(3)


def test_join_examples():
    assert join(D(0, 2), D(1, 2), P3) == gauss_point(3)
    S = D(F(1, 3), 1)
    assert join(S, S, P3) == S
    assert join(F(5), INF, P3) is INF
    with pytest.raises(UnsupportedModeError):
        join(0, 1, ARCH)


def test_hsia_examples():
    assert hsia(D(0, 1), D(1, 2), P3) == PAdicMag.one(3)
    assert hsia(gauss_point(3), gauss_point(3), P3) == PAdicMag.one(3)
    assert hsia(F(0), F(1), P3) == PAdicMag.one(3)
    assert hsia(F(0), INF, P3).is_infinite


def test_kernel_can_examples():
    g = gauss_point(3)
    assert kernel_can(g, g, P3) == PAdicMag.one(3)
    assert kernel_can(D(0, -1), INF, P3) == PAdicMag(3, 1)
    for z in (F(0), F(1), F(2, 5)):
        assert kernel_can(z, D(z, 1), P3) == PAdicMag(3, 1)
        assert kernel_can_gromov(z, D(z, 1), P3) == PAdicMag(3, 1)
    assert kernel_can(INF, INF, P3).is_zero
    assert kernel_can_gromov(INF, INF, P3).is_zero


def test_small_metric_examples():
    S = D(F(1, 2), 1)
    assert small_metric(S, S, P3) == 0.0
    assert small_metric(F(1, 2), S, P3) == pytest.approx(1 / 6, abs=1e-15)
    assert small_metric(1, 1j, ARCH) == chordal(1, 1j, ARCH)


def test_pi_epsilon_examples():
    e = PAdicMag(3, 1)
    assert pi_epsilon(F(0), e, P3) == D(0, 1)
    S = pi_epsilon(INF, e, P3)
    assert S == D(0, -1)
    assert kernel_can(S, S, P3) == e
    for z in (F(0), F(1), F(-2, 7)):
        assert kernel_can(pi_epsilon(z, e, P3), INF, P3) == PAdicMag.one(3)
    with pytest.raises(UnsupportedModeError):
        pi_epsilon(0, e, ARCH)
    with pytest.raises(PreconditionError):
        pi_epsilon(F(0), PAdicMag(3, -1), P3)


def test_iota_examples():
    assert iota(D(0, 1), P3) == D(0, -1)
    assert iota(D(3, 2), P3) == D(F(1, 3), 0)
    ident = ((1, 0), (0, 1))
    for S in (D(F(2, 3), 2), F(5), INF):
        assert mobius_apply(ident, S, P3) == S


def test_disk_equality_is_containment():
    assert D(0, 1) == D(3, 1)
    assert D(0, 1) != D(1, 1)
    assert D(0, 1) != D(0, 2)
    assert len({D(0, 1), D(3, 1), D(6, 1)}) == 1


def test_diameters():
    assert diam(F(4), P3).is_zero
    assert diam(D(4, 2), P3) == PAdicMag(3, 2)
    assert diam(INF, P3).is_infinite
    assert diam(INF, ARCH) == math.inf


def test_mobius_rejects_non_isometry():
    with pytest.raises(PreconditionError):
        mobius_apply(((3, 0), (0, 1)), F(1), P3)
    with pytest.raises(PreconditionError):
        mobius_apply(((2, 0), (0, 1)), 1j, ARCH)


seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds, st.sampled_from([2, 3, 5]))
def test_kernel_symmetry_bound_and_forms(seed, p):
    rng = np.random.default_rng(seed)
    mode = FieldMode.padic(p)
    S, T = rand_berk(rng, p), rand_berk(rng, p)
    k = kernel_can(S, T, mode)
    assert k == kernel_can(T, S, mode)
    assert k == kernel_can_gromov(S, T, mode)
    assert k <= PAdicMag.one(p)
    assert hsia(S, T, mode) == hsia(T, S, mode)


@given(seeds, st.sampled_from([2, 3, 5]))
def test_hsia_ultrametric(seed, p):
    rng = np.random.default_rng(seed)
    mode = FieldMode.padic(p)
    x, y, z = (rand_berk(rng, p) for _ in range(3))
    if INF in (x, y, z):
        return
    assert hsia(x, z, mode) <= max(hsia(x, y, mode), hsia(y, z, mode))


@given(seeds, st.sampled_from([2, 3, 5]))
def test_lemma_comparison(seed, p):
    rng = np.random.default_rng(seed)
    mode = FieldMode.padic(p)
    z, S = rand_rational(rng, p), rand_berk(rng, p)
    assert lemma_comparison_holds(z, S, mode)
    assert small_metric(z, S, mode) >= float(kernel_can(z, S, mode)) / 2 - 1e-15


@given(seeds, st.sampled_from([2, 3, 5]))
def test_iota_is_an_isometry(seed, p):
    rng = np.random.default_rng(seed)
    mode = FieldMode.padic(p)
    S, T = rand_berk(rng, p), rand_berk(rng, p)
    iS, iT = iota(S, mode), iota(T, mode)
    assert kernel_can(iS, iT, mode) == kernel_can(S, T, mode)
    assert small_metric(iS, iT, mode) == small_metric(S, T, mode)
    assert iota(iS, mode) == S


@given(seeds, st.sampled_from([2, 3, 5]))
def test_affine_isometries(seed, p):
    rng = np.random.default_rng(seed)
    mode = FieldMode.padic(p)
    alpha = F(int(rng.integers(1, p)) + p * int(rng.integers(0, 5)), 1 + p * int(rng.integers(0, 5)))
    beta = F(int(rng.integers(-30, 30)))
    S, T = rand_berk(rng, p), rand_berk(rng, p)
    aS, aT = affine_apply(S, alpha, beta, mode), affine_apply(T, alpha, beta, mode)
    assert kernel_can(aS, aT, mode) == kernel_can(S, T, mode)


@given(seeds, st.sampled_from([2, 3, 5]))
def test_general_isometries_on_berkovich_points(seed, p):
    rng = np.random.default_rng(seed)
    mode = FieldMode.padic(p)
    h = rand_padic_isometry(rng, p)
    assert in_isometry_group(h, mode)
    S, T = rand_berk(rng, p), rand_berk(rng, p)
    hS, hT = mobius_apply(h, S, mode), mobius_apply(h, T, mode)
    assert kernel_can(hS, hT, mode) == kernel_can(S, T, mode)
    assert mobius_apply(mobius_inverse(h), hS, mode, check=False) == S


@given(rationals, rationals)
def test_kernel_restricts_to_chordal(z, w):
    assert kernel_can(z, w, P3) == chordal(z, w, P3)


@given(complexes, complexes, seeds)
def test_arch_unitary_invariance(z, w, seed):
    h = rand_unitary(np.random.default_rng(seed))
    assert in_isometry_group(h, ARCH)
    hz, hw = mobius_apply(h, z, ARCH), mobius_apply(h, w, ARCH)
    assert chordal(hz, hw, ARCH) == pytest.approx(chordal(z, w, ARCH), abs=1e-9)


def test_median_of_three_classical_points():
    m = median(F(0), F(1), F(3), P3)
    assert m == D(0, 1)  # |0 - 3|_3 = 1/3 is the smallest pairwise join
