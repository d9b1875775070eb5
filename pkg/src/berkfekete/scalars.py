"""Scalars and absolute values in the two field modes.

Archimedean scalars are Python ``complex`` numbers and their magnitudes are
plain non-negative floats.  Non-archimedean scalars are ``Fraction`` values
regarded inside Q_p; their magnitudes are :class:`PAdicMag` objects storing
an exponent ``t`` with ``|x| = p**(-t)``.  Exponents are rational, so radii
such as ``|lambda|**(1/d)`` stay exact.

Plain floats and ``PAdicMag`` both support ``*``, ``/``, ``**``, ordering and
``max``, so most kernel code is written once for both modes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import ConfigurationError

__all__ = [
    "FieldMode",
    "ARCH",
    "PAdicMag",
    "is_prime",
    "padic_valuation",
    "magnitude",
    "as_scalar",
    "mag_mul",
    "mag_div",
    "mag_max",
    "mag_cmp",
    "mag_pow",
    "to_log_real",
    "log_coeff",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldMode:
    """Archimedean (``p is None``) or p-adic (``p`` prime) mode."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(int(self.p)):
            raise ConfigurationError(f"p = {self.p} is not prime")

    @classmethod
    def arch(cls) -> "FieldMode":
        return cls(None)

    @classmethod
    def padic(cls, p: int) -> "FieldMode":
        return cls(int(p))

    @property
    def archimedean(self) -> bool:
        return self.p is None

    @property
    def eps_K(self) -> int:
        """1 for archimedean fields, 0 otherwise."""
        return 1 if self.p is None else 0

    def __str__(self):
        return "arch" if self.p is None else f"padic({self.p})"


ARCH = FieldMode()


def _norm_exp(t):
    tt = type(t)
    if tt is int:
        return t
    if tt is Fraction:
        return t.numerator if t.denominator == 1 else t
    if isinstance(t, float):
        if math.isinf(t):
            return t
        raise TypeError("finite exponents must be rational, got a float")
    if isinstance(t, Fraction):
        return t.numerator if t.denominator == 1 else t
    if isinstance(t, int):
        return t
    if isinstance(t, Rational):
        return _norm_exp(Fraction(t))
    raise TypeError(f"bad exponent {t!r}")


class PAdicMag:
    """Exact p-adic magnitude ``p**(-t)``.

    ``t = +inf`` encodes ``|0| = 0`` and ``t = -inf`` the magnitude
    ``+infinity`` used by the Hsia kernel at the point at infinity.
    """

    __slots__ = ("p", "t")

    def __init__(self, p: int, t):
        self.p = p
        self.t = _norm_exp(t)

    @classmethod
    def zero(cls, p):
        return cls(p, math.inf)

    @classmethod
    def one(cls, p):
        return cls(p, 0)

    @classmethod
    def infinity(cls, p):
        return cls(p, -math.inf)

    @property
    def is_zero(self) -> bool:
        return self.t == math.inf

    @property
    def is_infinite(self) -> bool:
        return self.t == -math.inf

    def _check(self, other):
        if not isinstance(other, PAdicMag):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mixing primes {self.p} and {other.p}")
        return other

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if {self.t, other.t} == {math.inf, -math.inf}:
            raise ValueError("0 * infinity is undefined")
        return PAdicMag(self.p, self.t + other.t)

    def __truediv__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero magnitude")
        if other.is_infinite and self.is_infinite:
            raise ValueError("infinity / infinity is undefined")
        return PAdicMag(self.p, self.t - other.t)

    def __pow__(self, r):
        r = Fraction(r)
        if self.is_zero and r <= 0:
            raise ZeroDivisionError("non-positive power of zero")
        if r == 0:
            return PAdicMag.one(self.p)
        if isinstance(self.t, float):
            return PAdicMag(self.p, self.t if r > 0 else -self.t)
        return PAdicMag(self.p, self.t * r)

    def __eq__(self, other):
        if not isinstance(other, PAdicMag):
            return NotImplemented
        return self.p == other.p and self.t == other.t

    def __hash__(self):
        return hash((self.p, self.t))

    # |x| <= |y|  <=>  t_x >= t_y
    def __lt__(self, other):
        self._check(other)
        return self.t > other.t

    def __le__(self, other):
        self._check(other)
        return self.t >= other.t

    def __gt__(self, other):
        self._check(other)
        return self.t < other.t

    def __ge__(self, other):
        self._check(other)
        return self.t <= other.t

    def __float__(self):
        if self.is_zero:
            return 0.0
        if self.is_infinite:
            return math.inf
        if isinstance(self.t, int):
            return float(Fraction(self.p) ** -self.t)
        return float(self.p) ** -float(self.t)

    def log(self) -> float:
        """Natural log, ``-t log p``; ``-inf`` at zero."""
        return -float(self.t) * math.log(self.p)

    def log_coeff(self):
        """Exact rational ``c`` with ``log|x| = c log p``."""
        if isinstance(self.t, float):
            raise ValueError("log of a zero or infinite magnitude is not rational")
        return Fraction(-self.t)

    def __repr__(self):
        if self.is_zero:
            return f"PAdicMag(p={self.p}, 0)"
        if self.is_infinite:
            return f"PAdicMag(p={self.p}, inf)"
        return f"PAdicMag(p={self.p}, p^{-self.t})"


def padic_valuation(q, p: int):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    if not is_prime(p):
        raise ConfigurationError(f"p = {p} is not prime")
    q = Fraction(q)
    if q == 0:
        return math.inf
    return _vint(q.numerator, p) - _vint(q.denominator, p)


def _vint(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _fast_mag(q: Fraction, p: int) -> PAdicMag:
    # hot path: p already validated by the caller's FieldMode
    if q == 0:
        return PAdicMag(p, math.inf)
    return PAdicMag(p, _vint(q.numerator, p) - _vint(q.denominator, p))


def as_scalar(x, mode: FieldMode):
    """Coerce ``x`` to the scalar type of ``mode``."""
    if mode.archimedean:
        return complex(x)
    if isinstance(x, complex):
        raise TypeError("complex scalar in p-adic mode")
    if isinstance(x, float):
        raise TypeError("float scalar in p-adic mode; use Fraction or 'a/b'")
    return Fraction(x)


def magnitude(x, mode: FieldMode):
    """``|x|`` as a float (archimedean) or exact :class:`PAdicMag`."""
    if mode.archimedean:
        return abs(complex(x))
    return _fast_mag(Fraction(x), mode.p)


def unit_mag(mode: FieldMode):
    return 1.0 if mode.archimedean else PAdicMag(mode.p, 0)


def zero_mag(mode: FieldMode):
    return 0.0 if mode.archimedean else PAdicMag(mode.p, math.inf)


def inf_mag(mode: FieldMode):
    return math.inf if mode.archimedean else PAdicMag(mode.p, -math.inf)


def mag_mul(a, b):
    return a * b


def mag_div(a, b):
    if (isinstance(b, PAdicMag) and b.is_zero) or b == 0:
        raise ZeroDivisionError("division by the zero magnitude")
    return a / b


def mag_max(*ms):
    return max(ms)


def mag_cmp(a, b) -> int:
    return (a > b) - (a < b)


def mag_pow(m, r):
    if isinstance(m, PAdicMag):
        return m ** r
    if m == 0 and Fraction(r) <= 0:
        raise ZeroDivisionError("non-positive power of zero")
    return float(m) ** float(r)


def to_log_real(m) -> float:
    if isinstance(m, PAdicMag):
        return m.log()
    return math.log(m) if m > 0 else -math.inf


def log_coeff(m):
    """Exact coefficient of ``log p`` for a p-adic magnitude, else ``None``."""
    if isinstance(m, PAdicMag) and not isinstance(m.t, float):
        return Fraction(-m.t)
    return None
