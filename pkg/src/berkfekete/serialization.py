"""JSON encodings of scalars, points, divisors, polynomials and weights.

Rationals are ``"a/b"`` strings, complex numbers ``{"re": x, "im": y}``.
A disk point is ``{"type": "disk", "center": "a/b", "radius_exp": "t"}``
with radius ``p**-t``.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from .berkovich import INF, Disk
from .errors import ConfigurationError
from .potential import Divisor, EnergyValue, Weight, g0_weight, zero_weight
from .scalars import FieldMode, PAdicMag

__all__ = [
    "load_json_arg", "scalar_to_json", "scalar_from_json", "point_to_json", "point_from_json",
    "divisor_to_json", "divisor_from_json", "mag_to_json", "poly_from_json",
    "weight_from_json", "energy_from_json",
]


def load_json_arg(text: str):
    """Parse ``text`` as inline JSON, or as the path of a JSON file."""
    path = Path(text)
    try:
        if len(text) < 4096 and path.is_file():
            text = path.read_text()
    except OSError:
        pass
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def _fraction(x) -> Fraction:
    if isinstance(x, bool) or x is None:
        raise ConfigurationError(f"expected a rational, got {x!r}")
    if isinstance(x, float):
        raise ConfigurationError(f"p-adic values must be exact rationals, got float {x!r}")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ConfigurationError(f"cannot parse rational {x!r}") from e


def scalar_to_json(z, mode: FieldMode):
    if mode.archimedean:
        z = complex(z)
        return {"re": z.real, "im": z.imag}
    return str(Fraction(z))


def scalar_from_json(x, mode: FieldMode):
    if mode.archimedean:
        if isinstance(x, dict):
            try:
                return complex(float(x.get("re", 0.0)), float(x.get("im", 0.0)))
            except (TypeError, ValueError) as e:
                raise ConfigurationError(f"bad complex number {x!r}") from e
        if isinstance(x, str):
            try:
                return complex(float(Fraction(x)))
            except ValueError:
                try:
                    return complex(x.replace(" ", ""))
                except ValueError as e:
                    raise ConfigurationError(f"bad complex number {x!r}") from e
        if isinstance(x, (int, float)) and not isinstance(x, bool):
            return complex(x)
        raise ConfigurationError(f"bad complex number {x!r}")
    return _fraction(x)


def point_to_json(S, mode: FieldMode) -> dict:
    if S is INF:
        return {"type": "infinity"}
    if isinstance(S, Disk):
        return {"type": "disk", "center": str(S.center), "radius_exp": str(S.radius.t)}
    return {"type": "classical", "value": scalar_to_json(S, mode)}


def point_from_json(obj, mode: FieldMode):
    """Parse a point; bare scalars are read as classical points."""
    if not isinstance(obj, dict) or "type" not in obj:
        if obj == "inf" or obj == "infinity":
            return INF
        return scalar_from_json(obj, mode)
    kind = obj["type"]
    if kind == "infinity":
        return INF
    if kind == "classical":
        return scalar_from_json(obj.get("value"), mode)
    if kind == "disk":
        if mode.archimedean:
            raise ConfigurationError("disk points need p-adic mode")
        t = _fraction(obj.get("radius_exp"))
        return Disk(_fraction(obj.get("center")), PAdicMag(mode.p, t))
    raise ConfigurationError(f"unknown point type {kind!r}")


def divisor_to_json(Z: Divisor, mode: FieldMode) -> list:
    return [{"point": point_to_json(z, mode), "mult": m} for z, m in Z]


def divisor_from_json(obj, mode: FieldMode) -> Divisor:
    """Accept ``[{"point": ..., "mult": n}]`` or a plain list of points."""
    if not isinstance(obj, list) or not obj:
        raise ConfigurationError("a divisor is a non-empty JSON array")
    pairs = []
    for k, item in enumerate(obj):
        if isinstance(item, dict) and "point" in item:
            m = item.get("mult", 1)
            if not isinstance(m, int) or isinstance(m, bool):
                raise ConfigurationError(f"entry {k}: multiplicity must be an integer")
            pairs.append((point_from_json(item["point"], mode), m))
        else:
            pairs.append((point_from_json(item, mode), 1))
    try:
        return Divisor.from_pairs(pairs)
    except ValueError as e:
        raise ConfigurationError(str(e)) from e


def mag_to_json(m) -> dict:
    """``{"exp": t, "p": p, "value": p**-t}`` for p-adic magnitudes."""
    if isinstance(m, PAdicMag):
        t = m.t
        exp = "inf" if t == math.inf else "-inf" if t == -math.inf else str(t)
        return {"p": m.p, "exp": exp, "value": _real(float(m)), "log": _real(m.log())}
    m = float(m)
    return {"value": _real(m), "log": _real(math.log(m) if m > 0 else -math.inf)}


def _real(x: float):
    """Finite floats as numbers, infinities as ``"inf"``/``"-inf"`` strings."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x + 0.0


def poly_from_json(obj, mode: FieldMode):
    from .dynamics import PolyMap

    coeffs = obj.get("coeffs") if isinstance(obj, dict) else obj
    if not isinstance(coeffs, list) or len(coeffs) < 3:
        raise ConfigurationError("f needs {\"coeffs\": [...]} of degree at least 2, constant term first")
    return PolyMap(tuple(scalar_from_json(c, mode) for c in coeffs), mode)


def weight_from_json(spec, mode: FieldMode) -> Weight:
    """Weight spec ``{"builtin": "zero"|"g0"|"green", "f": {...}, "C": c, "kappa": k}``."""
    from dataclasses import replace

    if isinstance(spec, str):
        spec = {"builtin": spec}
    if not isinstance(spec, dict):
        raise ConfigurationError("a weight spec is a JSON object or a builtin name")
    kind = spec.get("builtin", "zero")
    if kind == "zero":
        w = zero_weight(mode)
    elif kind == "g0":
        if not mode.archimedean:
            raise ConfigurationError("g0 is an archimedean weight")
        w = g0_weight()
    elif kind == "green":
        from .dynamics import green_weight

        if "f" not in spec:
            raise ConfigurationError("green weight needs \"f\"")
        w = green_weight(poly_from_json(spec["f"], mode))
    else:
        raise ConfigurationError(f"unknown weight {kind!r}")
    if "C" in spec or "kappa" in spec:
        try:
            C = float(spec.get("C", w.holder[0] if w.holder else 0.0))
            kappa = float(spec.get("kappa", w.holder[1] if w.holder else 1.0))
        except (TypeError, ValueError) as e:
            raise ConfigurationError("C and kappa must be numbers") from e
        w = replace(w, holder=(C, kappa), holder_estimated=False)
    return w


def energy_from_json(obj) -> EnergyValue:
    if obj.get("exact") is not None:
        return EnergyValue.from_exact(Fraction(obj["exact"]), int(obj["log_base_prime"]))
    return EnergyValue(float(obj["approx"]))
