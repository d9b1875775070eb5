"""Random inputs and hypothesis strategies shared by the test modules."""
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from berkfekete.berkovich import INF, Disk
from berkfekete.scalars import PAdicMag

PRIMES = (2, 3, 5)


def rand_rational(rng, p, spread=4):
    """Rational with p-adic valuation roughly in [-spread, spread]."""
    num = int(rng.integers(1, 50)) * (1 if rng.random() < 0.5 else -1)
    den = int(rng.integers(1, 20))
    return Fraction(num, den) * Fraction(p) ** int(rng.integers(-spread, spread + 1))


def rand_disk(rng, p):
    t = int(rng.integers(-3, 5))
    if rng.random() < 0.3:
        t = Fraction(int(rng.integers(-9, 15)), 3)
    return Disk(rand_rational(rng, p), PAdicMag(p, t))


def rand_berk(rng, p):
    u = rng.random()
    if u < 0.05:
        return INF
    if u < 0.4:
        return rand_rational(rng, p)
    return rand_disk(rng, p)


def rand_arch_points(rng, N, shape="mixed"):
    """Distinct complex points in the unit disk, an annulus, or spread out."""
    if shape == "disk":
        r = np.sqrt(rng.random(N))
    elif shape == "annulus":
        r = rng.uniform(0.5, 2.0, N)
    else:
        r = np.exp(rng.normal(0, 1.5, N))
    return list(r * np.exp(2j * np.pi * rng.random(N)))


def rand_padic_points(rng, p, N):
    pts = set()
    while len(pts) < N:
        pts.add(rand_rational(rng, p))
    return sorted(pts)


def rand_unitary(rng):
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    a, b = complex(v[0], v[1]), complex(v[2], v[3])
    return ((a, b), (-b.conjugate(), a.conjugate()))


def rand_padic_isometry(rng, p):
    while True:
        m = [[int(x) for x in rng.integers(-20, 21, 2)] for _ in range(2)]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det % p != 0:
            scale = Fraction(p) ** int(rng.integers(-2, 3))
            return tuple(tuple(Fraction(x) * scale for x in row) for row in m)


rationals = st.builds(
    lambda n, d, k: Fraction(n, d) * Fraction(3) ** k,
    st.integers(-500, 500), st.integers(1, 60), st.integers(-4, 4),
)
nonzero_rationals = rationals.filter(lambda q: q != 0)
primes = st.sampled_from(PRIMES)
exps = st.one_of(st.integers(-6, 6), st.fractions(min_value=-6, max_value=6, max_denominator=6))
complexes = st.builds(complex, st.floats(-50, 50), st.floats(-50, 50))
