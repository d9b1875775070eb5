"""Command-line interface.

Exit codes: 0 success, 2 usage, 3 precondition failure, 4 bound violation,
5 internal error.  Every output embeds a manifest; with ``SOURCE_DATE_EPOCH``
set, re-running a manifest reproduces exact-mode output byte for byte.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import random
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .berkovich import Disk, chordal, hsia, kernel_can, kernel_can_gromov, small_metric
from .bounds import (finite_variant_check, holder_bound_check, mahler_classical_check,
                     mahler_general_check)
from .dynamics import escape_green, green_weight, periodic_fekete
from .errors import BerkFeketeError, ConfigurationError, PreconditionError
from .potential import (fekete_sum, lower_bound_check, negativity_check,
                        regularized_fekete_sum)
from .scalars import FieldMode, is_prime
from .search import SearchConfig, fekete_maximize, roots_of_unity
from .serialization import (divisor_from_json, divisor_to_json, load_json_arg, mag_to_json,
                            point_from_json, point_to_json, poly_from_json, weight_from_json)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VIOLATION, EXIT_INTERNAL = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


class Violation(Exception):
    def __init__(self, payload):
        super().__init__("bound violated")
        self.payload = payload


def _mode(args) -> FieldMode:
    if args.mode == "arch":
        return FieldMode.arch()
    if args.prime is None or not is_prime(args.prime):
        raise UsageError("--mode padic needs --prime with a prime value")
    return FieldMode.padic(args.prime)


def _epsilon(text, mode: FieldMode):
    try:
        e = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse epsilon {text!r}")
    if not 0 < e <= 1:
        raise UsageError("epsilon must lie in (0, 1]")
    return float(e) if mode.archimedean else e


def cmd_kernel(args, mode):
    pts = load_json_arg(args.points)
    if not isinstance(pts, list) or len(pts) != 2:
        raise UsageError("--points must be a JSON array of two points")
    S, T = (point_from_json(x, mode) for x in pts)
    out = {"points": [point_to_json(S, mode), point_to_json(T, mode)]}
    out["kernel_can"] = mag_to_json(kernel_can(S, T, mode))
    if not mode.archimedean:
        out["kernel_can_gromov"] = mag_to_json(kernel_can_gromov(S, T, mode))
        out["hsia"] = mag_to_json(hsia(S, T, mode))
    if not isinstance(S, Disk) and not isinstance(T, Disk):
        out["chordal"] = mag_to_json(chordal(S, T, mode))
    out["small_metric"] = small_metric(S, T, mode)
    return out


def _weight(text, mode):
    """Weight from a builtin name (``zero``, ``g0``) or a JSON spec."""
    spec = text if text in ("zero", "g0") else load_json_arg(text)
    return weight_from_json(spec, mode)


def _report_out(rep):
    if not rep.holds:
        raise Violation(rep.to_json())
    return rep.to_json()


def cmd_mahler(args, mode):
    F = divisor_from_json(load_json_arg(args.points), mode)
    if args.classical:
        if not F.is_reduced():
            raise PreconditionError("points must be distinct")
        return _report_out(mahler_classical_check(list(F.points), mode))
    g = _weight(args.weight, mode)
    if args.holder:
        return _report_out(holder_bound_check(g, F))
    if args.epsilon is None:
        raise UsageError("--epsilon is required for --general and --finite")
    eps = _epsilon(args.epsilon, mode)
    if args.general:
        return _report_out(mahler_general_check(g, F, eps))
    return _report_out(finite_variant_check(g, F, eps))


def cmd_roots_of_unity(args, mode):
    from .potential import g0_weight

    g = g0_weight()
    rows = []
    for N in range(max(2, args.n_min), args.n_max + 1):
        val = fekete_sum(roots_of_unity(N), g).approx
        ratio = val / (N * math.log(N))
        rows.append({"N": N, "fekete_sum": val, "ratio": ratio, "abs_dev": abs(ratio - 1)})
    if any(r["abs_dev"] > 1e-9 for r in rows):
        raise Violation({"rows": rows})
    return rows


def cmd_padic_periodic(args, mode):
    p = args.prime
    if p is None or not is_prime(p):
        raise UsageError("--prime must be a prime")
    try:
        lam = Fraction(args.lam)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse lambda {args.lam!r}")
    rows = [periodic_fekete(p, args.degree, lam, n, args.degree_cap).to_json()
            for n in range(1, args.n_max + 1)]
    if not all(r["match"] for r in rows):
        raise Violation({"rows": rows})
    return rows


def cmd_green(args, mode):
    f = poly_from_json(load_json_arg(args.f), mode)
    S = point_from_json(load_json_arg(args.point), mode)
    est = escape_green(f, S, args.n_max)
    w = green_weight(f, args.n_max) if args.normalized else None
    return {
        "f": f.to_json(), "point": point_to_json(S, mode), "value": est.value,
        "error": est.error, "iterations": est.iterations, "converged": est.converged,
        "exact": None if est.exact is None else str(est.exact),
        "log_base_prime": None if mode.archimedean or est.exact is None else mode.p,
        "normalized_value": None if w is None else w(S),
    }


def cmd_regularized(args, mode):
    Z = divisor_from_json(load_json_arg(args.divisor), mode)
    g = _weight(args.weight, mode)
    eps = _epsilon(args.epsilon, mode)
    out = {"divisor": divisor_to_json(Z, mode), "epsilon": str(args.epsilon),
           "weight": g.label, "energy": regularized_fekete_sum(Z, eps, g).to_json()}
    reps = []
    if args.check in ("negativity", "both"):
        reps.append(negativity_check(Z, eps, g))
    if args.check in ("lower", "both"):
        reps.append(lower_bound_check(Z, eps, g))
    out["reports"] = [r.to_json() for r in reps]
    if not all(r.holds for r in reps):
        raise Violation(out)
    return out


def cmd_search(args, mode):
    if not mode.archimedean:
        raise PreconditionError("search runs in archimedean mode only")
    g = _weight(args.weight, mode)
    cfg = SearchConfig(N=args.N, iterations=args.iterations, restarts=args.restarts,
                       initial_step=args.initial_step, step_decay=args.step_decay,
                       seed=args.seed, include_structured_seeds=not args.no_structured_seeds,
                       threads=args.threads)
    res = fekete_maximize(g, cfg)
    out = res.to_json()
    if not res.bound_report.holds:
        raise Violation(out)
    return out


COMMANDS = {
    "kernel": cmd_kernel, "mahler": cmd_mahler, "roots-of-unity": cmd_roots_of_unity,
    "padic-periodic": cmd_padic_periodic, "green": cmd_green,
    "regularized": cmd_regularized, "search": cmd_search,
}


def _global_flags(ap, defaults: bool):
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    ap.add_argument("--mode", choices=("arch", "padic"), default=d("arch"))
    ap.add_argument("--prime", type=int, default=d(None))
    ap.add_argument("--format", choices=("json", "csv", "plain"), default=d("json"))
    ap.add_argument("--out", default=d(None), help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="berkfekete", description=__doc__.splitlines()[0])
    _global_flags(ap, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, defaults=False)
    sub = ap.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    k = sub.add_parser("kernel", help="kernels between two points")
    k.add_argument("--points", required=True, help="JSON array of two points (inline or file)")

    m = sub.add_parser("mahler", help="check a Fekete-sum upper bound")
    which = m.add_mutually_exclusive_group(required=True)
    for flag in ("classical", "general", "holder", "finite"):
        which.add_argument(f"--{flag}", action="store_true")
    m.add_argument("--points", required=True, help="points or divisor JSON (inline or file)")
    m.add_argument("--weight", default="zero", help="zero, g0 or a JSON weight spec")
    m.add_argument("--epsilon", default=None)

    r = sub.add_parser("roots-of-unity", help="Fekete sums of roots of unity for g0")
    r.add_argument("--n-max", type=int, default=64)
    r.add_argument("--n-min", type=int, default=2)

    pp = sub.add_parser("padic-periodic", help="exact Fekete sums of periodic points")
    pp.add_argument("--degree", type=int, required=True)
    pp.add_argument("--lambda", dest="lam", required=True)
    pp.add_argument("--n-max", type=int, default=1)
    pp.add_argument("--degree-cap", type=int, default=64)

    gr = sub.add_parser("green", help="escape-rate Green function at a point")
    gr.add_argument("--f", required=True, help='{"coeffs": [...]}, constant term first')
    gr.add_argument("--point", required=True)
    gr.add_argument("--n-max", type=int, default=64)
    gr.add_argument("--normalized", action="store_true", help="also report the normalized weight")

    rg = sub.add_parser("regularized", help="regularized Fekete sum and its bounds")
    rg.add_argument("--divisor", required=True)
    rg.add_argument("--epsilon", required=True)
    rg.add_argument("--weight", default="zero", help="zero, g0 or a JSON weight spec")
    rg.add_argument("--check", choices=("none", "negativity", "lower", "both"), default="both")

    s = sub.add_parser("search", help="local search for large Fekete sums")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--iterations", type=int, default=10_000)
    s.add_argument("--restarts", type=int, default=8)
    s.add_argument("--initial-step", type=float, default=0.5)
    s.add_argument("--step-decay", type=float, default=0.9995)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--no-structured-seeds", action="store_true")
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--weight", default="g0", help="zero, g0 or a JSON weight spec")

    rp = sub.add_parser("replay", help="re-run the command recorded in an output manifest")
    rp.add_argument("manifest", help="output JSON file written by this tool")
    return ap


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def _manifest(args, argv) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("format", "out")}
    return {
        "command": args.command, "mode": args.mode, "prime": args.prime,
        "parameters": params, "argv": list(argv), "seed": params.get("seed"),
        "versions": {"berkfekete": __version__, "python": platform.python_version(),
                     "numpy": np.__version__},
        "timestamp": _timestamp(),
    }


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def render(doc: dict, fmt: str) -> str:
    result = doc["result"]
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=str, allow_nan=False) + "\n"
    rows = result if isinstance(result, list) else [result]
    rows = [_flatten(r) for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        fields = list(dict.fromkeys(k for r in rows for k in r))
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = []
    for r in rows:
        lines += [f"{k}: {v}" for k, v in r.items()]
        lines.append("")
    return "\n".join(lines)


def _emit(doc, args):
    text = render(doc, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.command == "replay":
        try:
            with open(args.manifest) as fh:
                recorded = json.load(fh)["manifest"]["argv"]
        except (OSError, KeyError, ValueError) as e:
            print(f"error: cannot read manifest: {e}", file=sys.stderr)
            return EXIT_USAGE
        return main(recorded)
    if args.command == "search" and args.seed is None:
        args.seed = random.SystemRandom().randrange(2 ** 63)
        print(f"seed: {args.seed}", file=sys.stderr)
        argv = argv + ["--seed", str(args.seed)]
    try:
        mode = _mode(args)
        result = COMMANDS[args.command](args, mode)
        code = EXIT_OK
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigurationError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Violation as v:
        result, code = v.payload, EXIT_VIOLATION
        print("error: bound violated (implementation bug)", file=sys.stderr)
    except (PreconditionError, BerkFeketeError) as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit({"manifest": _manifest(args, argv), "result": result}, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
