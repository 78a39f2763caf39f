"""Command-line front end.

Elements are passed as JSON arrays, e.g. ``eucalg mul -n 4 "[0,1,0,0]" "[0,0,0,1]"``.
Exit codes: 0 success, 2 usage error, 3 zero divisor, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import analytic, haar, spectral, zero_divisors
from .core import AlgebraContext, Element, algebra_norm, det_lu, multiply_naive, power
from .errors import AlgebraError, DimensionMismatch, NumericFailure, ZeroDivisor

EXIT_OK, EXIT_USAGE, EXIT_ZERO_DIVISOR, EXIT_NUMERIC = 0, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    n: int | None = None
    seed: int = 0
    samples: int = 100_000
    format: str = "plain"
    tol_eq: float = 1e-9
    tol_zero: float = 1e-9

    def context(self) -> AlgebraContext:
        if self.n is None:
            raise UsageError("this command needs -n")
        try:
            return AlgebraContext(self.n, self.tol_eq, self.tol_zero)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


# -- formatting --------------------------------------------------------------


def _fmt(x: float, digits: int) -> str:
    if math.isinf(x) or math.isnan(x):
        return {math.inf: "Infinity", -math.inf: "-Infinity"}.get(x, "NaN")
    return format(x + 0.0, f".{digits}g")


def _dump(obj: Any, digits: int) -> str:
    """JSON text with floats at a fixed number of significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj), digits)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dump(v, digits)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_dump(v, digits) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _plain_vec(v: Sequence[float]) -> str:
    v = np.asarray(v, dtype=float)
    # entries this far below the largest one are invisible at 6 digits anyway
    big = float(np.max(np.abs(v))) if v.size else 0.0
    v = np.where(np.abs(v) <= 1e-12 * big, 0.0, v)
    return "[" + ",".join(_fmt(float(x), 6) for x in v) + "]"


def _plain(value: Any) -> str:
    if isinstance(value, Element):
        return _plain_vec(value.coeffs)
    if isinstance(value, (float, np.floating)):
        return _fmt(float(value), 6)
    if isinstance(value, (list, tuple, np.ndarray)) and all(isinstance(x, (int, float, np.number)) for x in value):
        return _plain_vec(value)
    if isinstance(value, dict) and set(value) == {"n", "coeffs"}:
        return _plain_vec(value["coeffs"])
    return str(value)


class Output:
    def __init__(self, cfg: CliConfig, stream):
        self.cfg = cfg
        self.stream = stream

    def value(self, result: Any, json_form: Any | None = None) -> None:
        """A single result: an element, a scalar or a list."""
        if self.cfg.format == "json":
            if json_form is None:
                json_form = result.to_json() if isinstance(result, Element) else result
            print(_dump(json_form, 17), file=self.stream)
        else:
            print(_plain(result), file=self.stream)

    def record(self, fields: dict) -> None:
        """A keyed report; plain mode prints one ``key: value`` line per field."""
        if self.cfg.format == "json":
            enc = {k: (v.to_json() if isinstance(v, Element) else v) for k, v in fields.items()}
            print(_dump(enc, 17), file=self.stream)
        else:
            for k, v in fields.items():
                print(f"{k}: {_plain(v)}", file=self.stream)


# -- argument helpers --------------------------------------------------------


def parse_element(text: str, ctx: AlgebraContext) -> Element:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not a JSON array: {text!r}") from exc
    if isinstance(data, dict):
        try:
            return Element.from_json(data, ctx)
        except (KeyError, DimensionMismatch, ValueError, TypeError) as exc:
            raise UsageError(f"bad element {text!r}: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in data):
        raise UsageError(f"element must be a JSON array of numbers: {text!r}")
    if len(data) != ctx.n:
        raise UsageError(f"element {text!r} has {len(data)} entries, expected {ctx.n}")
    try:
        return Element(np.array(data, dtype=float), ctx)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_vector(tokens: Sequence[str] | None, what: str) -> list[float]:
    if not tokens:
        raise UsageError(f"missing {what}")
    try:
        if len(tokens) == 1 and tokens[0].lstrip().startswith("["):
            vals = json.loads(tokens[0])
        else:
            vals = [float(t) for t in tokens]
        return [float(v) for v in vals]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad {what}: {' '.join(tokens)}") from exc


def _box_from_args(args, ctx: AlgebraContext) -> list[haar.RegionBox]:
    try:
        if args.box:
            with open(args.box) as fh:
                data = json.load(fh)
            items = data if isinstance(data, list) else [data]
            boxes = [haar.RegionBox.from_json(d) for d in items]
        else:
            boxes = [haar.RegionBox(parse_vector(args.lower, "--lower"), parse_vector(args.upper, "--upper"))]
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read box: {exc}") from exc
    except (ValueError, DimensionMismatch) as exc:
        raise UsageError(str(exc)) from exc
    for b in boxes:
        if b.n != ctx.n:
            raise UsageError(f"box has dimension {b.n}, expected {ctx.n}")
    return boxes


# -- subcommands -------------------------------------------------------------


def cmd_mul(args, cfg, out):
    ctx = cfg.context()
    a, b = parse_element(args.a, ctx), parse_element(args.b, ctx)
    prod = spectral.multiply_fast(a, b) if args.fast else multiply_naive(a, b)
    out.value(prod)


def cmd_pow(args, cfg, out):
    ctx = cfg.context()
    if args.m < 0:
        raise UsageError("exponent must be non-negative")
    out.value(power(parse_element(args.a, ctx), args.m))


def cmd_inv(args, cfg, out):
    ctx = cfg.context()
    a = parse_element(args.a, ctx)
    if args.method == "linear":
        out.value(zero_divisors.inverse_cayley_hamilton(a))
    else:
        out.value(spectral.inverse_via_spectrum(a))


def cmd_norm(args, cfg, out):
    out.value(algebra_norm(parse_element(args.a, cfg.context())))


def cmd_det(args, cfg, out):
    a = parse_element(args.a, cfg.context())
    if args.method == "lu":
        out.value(det_lu(a))
        return
    sd = spectral.slogdet_via_spectrum(a)
    if sd.overflow:
        out.record({"det": sd.value, "sign": sd.sign, "log_abs": sd.log_abs, "overflow": True})
    else:
        out.value(sd.value)


def cmd_spectrum(args, cfg, out):
    ctx = cfg.context()
    s = spectral.spectrum(parse_element(args.a, ctx))
    pairs = [[float(z.real), float(z.imag)] for z in s.values]
    if cfg.format == "json":
        out.value(None, {"n": ctx.n, "values": pairs})
    else:
        for k, (re, im) in enumerate(pairs):
            print(f"{k} {_fmt(re, 6)} {_fmt(im, 6)}", file=out.stream)


def cmd_zdiv(args, cfg, out):
    if args.zdiv_cmd == "check":
        ctx = cfg.context()
        rep = zero_divisors.is_zero_divisor(parse_element(args.a, ctx))
        out.record({"det_value": rep.det_value, "min_eigen_ratio": rep.min_eigen_ratio,
                    "is_zero_divisor": rep.is_zero_divisor})
    elif args.zdiv_cmd == "plane4":
        ctx = AlgebraContext(4, cfg.tol_eq, cfg.tol_zero)
        out.value(zero_divisors.r4_zero_divisor_point(args.s, args.t, args.branch, ctx))
    else:
        ctx = cfg.context()
        if cfg.samples < 1:
            raise UsageError("--samples must be >= 1")
        frac = zero_divisors.estimate_zero_divisor_measure(ctx, cfg.samples, args.eps, cfg.seed, args.workers)
        out.record({"fraction": frac, "eps": args.eps, "samples": cfg.samples, "seed": cfg.seed})


def cmd_haar(args, cfg, out):
    ctx = cfg.context()
    boxes = _box_from_args(args, ctx)
    if args.haar_cmd == "box":
        if len(boxes) == 1:
            est = haar.haar_measure_mc(boxes[0], cfg.samples, cfg.seed, ctx, workers=args.workers)
        else:
            est = haar.haar_measure_union(boxes, cfg.samples, cfg.seed, ctx)
        out.record({**est.to_json(), "seed": cfg.seed})
        return
    if len(boxes) != 1:
        raise UsageError("invariance takes a single box")
    a = parse_element(args.a, ctx)
    moved_seed = cfg.seed if args.same_seed else cfg.seed + 1
    base = haar.haar_measure_mc(boxes[0], cfg.samples, cfg.seed, ctx, workers=args.workers)
    moved = haar.translate_region(a, boxes[0], cfg.samples, moved_seed, workers=args.workers)
    sigma = math.hypot(base.std_error, moved.std_error)
    out.record({
        "base": base.to_json(),
        "translated": moved.to_json(),
        "difference": moved.value - base.value,
        "combined_std_error": sigma,
        "invariant": haar.invariance_verdict(base, moved),
        "seed": cfg.seed,
        "translated_seed": moved_seed,
    })


def cmd_analytic(args, cfg, out):
    ctx = cfg.context()
    try:
        f = analytic.field_by_name(args.field, ctx.n, args.h)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    if args.analytic_cmd == "liouville":
        radii = parse_vector(args.radii, "--radii")
        vals = analytic.liouville_probe(f, radii, args.points, cfg.seed)
        out.record({"radii": radii, "max_norm": vals, "seed": cfg.seed})
        return
    if args.at is not None:
        a = parse_element(args.at, ctx)
    else:
        a = ctx.random(np.random.default_rng(cfg.seed))
    rec: dict[str, Any] = {"at": a}
    if args.analytic_cmd == "cr":
        rec["residual"] = analytic.cauchy_riemann_residual(f, a)
    elif args.analytic_cmd == "diff":
        rec["residual"] = analytic.differentiability_residual(f, a, args.probes, cfg.seed)
        rec["derivative"] = analytic.derivative_via_axis(f, a, 1)
    elif args.analytic_cmd == "laplacian":
        rec["laplacian"] = analytic.laplacian(f, a).tolist()
    else:
        stats = analytic.sphere_statistics(f, a, args.r, args.points, cfg.seed)
        fa = f(a)
        dev = np.abs(stats.mean.coeffs - fa.coeffs)
        rec.update({
            "r": args.r,
            "sphere_mean": stats.mean,
            "value_at_center": fa,
            "std_error": stats.std_error.tolist(),
            "within_3_sigma": bool(np.all(dev <= 3 * stats.std_error + 1e-15)),
        })
    if args.at is None or args.analytic_cmd == "meanvalue":
        rec["seed"] = cfg.seed
    out.record(rec)


def cmd_roots4(args, cfg, out):
    ctx = AlgebraContext(4, cfg.tol_eq, cfg.tol_zero)
    roots = zero_divisors.square_roots_of_pm1_r4(args.sign, ctx)
    if cfg.format == "json":
        out.value(None, [r.to_json() for r in roots])
    else:
        for r in roots:
            print(_plain(r), file=out.stream)


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(dim: bool = True) -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    if dim:
        p.add_argument("-n", type=int, dest="n", help="dimension of R_n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.add_argument("--tol-eq", type=float, default=1e-9)
    p.add_argument("--tol-zero", type=float, default=1e-9)
    return p


def build_parser() -> argparse.ArgumentParser:
    common, nodim = _common(), _common(dim=False)
    root = _Parser(prog="eucalg", description="Arithmetic and analysis in the Euclidean algebra R_n.")
    sub = root.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("mul", parents=[common], help="product of two elements")
    p.add_argument("a")
    p.add_argument("b")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--naive", action="store_true")
    g.add_argument("--fast", action="store_true")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("pow", parents=[common], help="integer power")
    p.add_argument("a")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_pow)

    p = sub.add_parser("inv", parents=[common], help="multiplicative inverse")
    p.add_argument("a")
    p.add_argument("--method", choices=("spectral", "linear"), default="spectral")
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("norm", parents=[common], help="|det sigma(a)|")
    p.add_argument("a")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("det", parents=[common], help="det sigma(a)")
    p.add_argument("a")
    p.add_argument("--method", choices=("spectral", "lu"), default="spectral")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of sigma(a)")
    p.add_argument("a")
    p.set_defaults(func=cmd_spectrum)

    z = sub.add_parser("zdiv", help="zero divisors")
    zs = z.add_subparsers(dest="zdiv_cmd", required=True, parser_class=_Parser)
    p = zs.add_parser("check", parents=[common])
    p.add_argument("a")
    p = zs.add_parser("plane4", parents=[nodim])
    p.add_argument("s", type=float)
    p.add_argument("t", type=float)
    p.add_argument("branch", choices=("I", "II"))
    p = zs.add_parser("measure", parents=[common])
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--workers", type=int, default=1)
    z.set_defaults(func=cmd_zdiv)

    h = sub.add_parser("haar", help="Haar measure estimates")
    hs = h.add_subparsers(dest="haar_cmd", required=True, parser_class=_Parser)
    for name in ("box", "invariance"):
        p = hs.add_parser(name, parents=[common])
        p.add_argument("--lower", nargs="+")
        p.add_argument("--upper", nargs="+")
        p.add_argument("--box", help="JSON file with a box or a list of disjoint boxes")
        p.add_argument("--workers", type=int, default=1)
        if name == "invariance":
            p.add_argument("--a", required=True, dest="a")
            p.add_argument("--same-seed", action="store_true")
    h.set_defaults(func=cmd_haar)

    a = sub.add_parser("analytic", help="finite-difference checks of analytic fields")
    as_ = a.add_subparsers(dest="analytic_cmd", required=True, parser_class=_Parser)
    for name in ("cr", "diff", "laplacian", "meanvalue", "liouville"):
        p = as_.add_parser(name, parents=[common])
        p.add_argument("--field", required=True)
        p.add_argument("--at")
        p.add_argument("--r", type=float, default=1.0)
        p.add_argument("--h", type=float, default=analytic.DEFAULT_FD_STEP)
        p.add_argument("--points", type=int, default=100_000)
        p.add_argument("--radii", nargs="+", default=["1", "2", "4"])
        p.add_argument("--probes", type=int, default=0, help="random-increment probes for diff")
    a.set_defaults(func=cmd_analytic)

    p = sub.add_parser("roots4", parents=[nodim], help="square roots of +1 or -1 in R_4")
    p.add_argument("--sign", type=int, choices=(1, -1), required=True)
    p.set_defaults(func=cmd_roots4)
    return root


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = CliConfig(getattr(args, "n", None), args.seed, args.samples, args.format, args.tol_eq, args.tol_zero)
        args.func(args, cfg, Output(cfg, stdout))
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except ZeroDivisor as exc:
        print(f"ZeroDivisor: {exc}", file=stderr)
        return EXIT_ZERO_DIVISOR
    except NumericFailure as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return EXIT_NUMERIC
    except (AlgebraError, ValueError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
