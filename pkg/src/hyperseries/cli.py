"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 numerical non-convergence,
3 property-suite failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from .algebra import AlgebraError, AlgebraElement, as_cone_point, complex_numbers, spec_from_config
from .geometry import QuadratureError, SigmaBall, cassini_boundary, sigma, tau, tau_direct
from .series import PowerSeries, SphericalSeries, abel_radius
from .stem import StemPolynomial

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_PROPERTY = 0, 1, 2, 3


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def fmt_float(v) -> str:
    v = float(v) + 0.0  # folds -0.0 into 0.0
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".17g")


def dumps(obj) -> str:
    """JSON text with every float printed to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, AlgebraElement):
        return dumps(obj.coords)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def parse_element(spec, value) -> AlgebraElement:
    """An element from a coordinate list, a number, or text such as ``1+2i-k`` or ``0.5*e12``."""
    if isinstance(value, AlgebraElement):
        return value
    if isinstance(value, (int, float)):
        return spec.scalar(float(value))
    if isinstance(value, (list, tuple)):
        if len(value) != spec.dim:
            raise InputError(f"expected {spec.dim} coordinates, got {len(value)}")
        return AlgebraElement(np.asarray(value, dtype=float), spec)
    text = str(value).replace(" ", "")
    if text.startswith("["):
        return parse_element(spec, json.loads(text))
    if not text:
        raise InputError("empty element")
    names = sorted((n for n in spec.basis_names if n != "1"), key=len, reverse=True)
    unit = "|".join(re.escape(n) for n in names)
    term = re.compile(rf"([+-]?)(?:({_NUM})\*?)?({unit})?")
    coords = np.zeros(spec.dim)
    pos = 0
    while pos < len(text):
        m = term.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise InputError(f"cannot parse element {value!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        idx = spec.basis_names.index(m.group(3)) if m.group(3) else 0
        coords[idx] += sign * coef
        pos = m.end()
        if pos < len(text) and text[pos] not in "+-":
            raise InputError(f"cannot parse element {value!r}")
    return AlgebraElement(coords, spec)


def parse_complex(text) -> complex:
    el = parse_element(complex_numbers(), text)
    return complex(el.coords[0], el.coords[1])


def _load_json(value):
    """Inline JSON, or the contents of a JSON file."""
    if value is None:
        return None
    if os.path.exists(value):
        with open(value, encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise InputError(f"not a JSON file or JSON text: {value!r}") from exc


def _spec(args, config):
    if args.algebra:
        return spec_from_config(args.algebra)
    if config and "algebra" in config:
        return spec_from_config({"algebra": config["algebra"], "norm": config.get("norm", "euclidean")})
    return spec_from_config("H")


def _require(config, key):
    if not config or key not in config:
        raise InputError(f"the config needs a {key!r} entry")
    return config[key]


def _points(spec, raw):
    if raw is None:
        raise InputError("--points is required")
    pts = raw if isinstance(raw, list) else [raw]
    return [as_cone_point(parse_element(spec, p)) for p in pts]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _series_from_config(cls, spec, config, order):
    center = parse_element(spec, _require(config, "center"))
    coeffs = [parse_element(spec, c) for c in _require(config, "coeffs")]
    order = order if order is not None else config.get("order")
    if order is not None and order >= len(coeffs):
        raise InputError(f"order {order} needs at least {order + 1} coefficients")
    return cls(center, coeffs, order)


def cmd_eval(args, kind):
    config = _load_json(args.config)
    spec = _spec(args, config)
    cls = PowerSeries if kind == "power" else SphericalSeries
    S = _series_from_config(cls, spec, config, args.order)
    results = []
    divergent = False
    for x in _points(spec, _load_json(args.points) if args.points else config.get("points")):
        v = S.evaluate(x)
        divergent |= v.divergent
        results.append({
            "x": x.element.coords, "value": v.value.coords, "tail_bound": v.tail_bound,
            "distance": v.distance, "radius": v.radius, "divergent": v.divergent, "confidence": v.confidence,
        })
    _emit(dumps({"kind": kind, "order": S.order, "results": results}), args.out)
    return EXIT_NUMERIC if divergent else EXIT_OK


def cmd_radius(args):
    config = _load_json(args.config)
    spec = _spec(args, config)
    coeffs = np.array([parse_element(spec, c).coords for c in _require(config, "coeffs")])
    if args.order is not None:
        coeffs = coeffs[: args.order + 1]
    window = tuple(config["window"]) if config.get("window") else None
    est = abel_radius(coeffs, window, spec=spec)
    _emit(dumps({"R": est.R, "R_fit": est.R_fit, "window": list(est.window),
                 "diagnostics": est.diagnostics}), args.out)
    return EXIT_OK


def _stem_from_config(spec, config):
    if "stem" in config:
        rows = config["stem"]
        pairs = {}
        for row in rows:
            pairs[int(row["k"])] = (parse_element(spec, row.get("c1", 0.0)).coords,
                                    parse_element(spec, row.get("c2", 0.0)).coords)
        K = max(pairs) + 1
        c = np.zeros((K, 2, spec.dim))
        for k, (c1, c2) in pairs.items():
            c[k, 0], c[k, 1] = c1, c2
        return StemPolynomial(spec, c)
    if "coeffs" in config:
        return StemPolynomial.from_a_coefficients(spec, [parse_element(spec, c).coords for c in config["coeffs"]])
    raise InputError("the config needs a 'stem' or 'coeffs' entry")


def cmd_coeffs(args):
    from .expansion import expand

    config = _load_json(args.config)
    spec = _spec(args, config)
    F = _stem_from_config(spec, config or {})
    y = as_cone_point(parse_element(spec, _require(config, "center")))
    N = args.order if args.order is not None else int(config.get("order", 5))
    rep = expand(F, y, N, args.method, r=config.get("radius"), quad_points=args.quad_points)
    _emit(dumps({"method": rep.method, "kind": rep.kind, "order": N,
                 "coefficients": [c.coords for c in rep.coefficients],
                 "residuals": rep.residuals, "bounds": rep.bounds}), args.out)
    return EXIT_OK


def _keyvals(tokens):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise InputError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_boundary(args):
    n = args.samples or 256
    rows = ["loop,phi,re,im"]
    if args.cassini:
        kv = _keyvals(args.cassini)
        w = parse_complex(kv.get("w", "i"))
        r = float(kv.get("r", "1"))
        B = cassini_boundary(w, r, n)
        for loop in B.loops:
            for th, z in zip(loop.theta, loop.z):
                rows.append(f"{loop.label},{fmt_float(th)},{fmt_float(z.real)},{fmt_float(z.imag)}")
    elif args.sigma:
        spec = _spec(args, None)
        kv = _keyvals(args.sigma)
        y = as_cone_point(parse_element(spec, kv.get("y", "1")))
        ball = SigmaBall(y, float(kv.get("r", "1")))
        for label, ph, z in ball.boundary_slices(n):
            for p, v in zip(ph, z):
                rows.append(f"{label},{fmt_float(p)},{fmt_float(v.real)},{fmt_float(v.imag)}")
    else:
        raise InputError("boundary needs --cassini or --sigma")
    _emit("\n".join(rows), args.out)
    return EXIT_OK


def cmd_metric(args):
    spec = _spec(args, None)
    raw = _load_json(args.points)
    if not isinstance(raw, list) or not raw:
        raise InputError("--points must be a list of two points or of point pairs")
    single = len(raw) == 2 and all(_is_point(p) for p in raw)
    pairs = [raw] if single else raw
    out = []
    for pair in pairs:
        if len(pair) != 2:
            raise InputError("each metric query needs exactly two points")
        x, y = (as_cone_point(parse_element(spec, p)) for p in pair)
        out.append({"x": x.element.coords, "y": y.element.coords, "sigma": sigma(x, y), "tau": tau(x, y),
                    "tau_direct": tau_direct(x, y),
                    "norm_difference": spec.norm(x.element.coords - y.element.coords)})
    _emit(dumps(out[0] if single else out), args.out)
    return EXIT_OK


def _is_point(p):
    if isinstance(p, (str, int, float)):
        return True
    return isinstance(p, list) and all(isinstance(v, (int, float)) for v in p)


def cmd_verify(args):
    from .verify import run_suite

    results = run_suite(args.samples or 2000, args.seed, args.only)
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} properties passed")
    _emit("\n".join(lines), args.out)
    return EXIT_PROPERTY if failed else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--algebra", help="H, O, C or clifford:n (overrides the config)")
    common.add_argument("--config", help="JSON text or path to a JSON file")
    common.add_argument("--points", help="JSON list of points (coordinates or text like 1+2i)")
    common.add_argument("--order", type=int, help="truncation order")
    common.add_argument("--samples", type=int, help="sample or node count")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = _Parser(prog="hyperseries", description="Power and spherical series over real alternative algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("eval-power", parents=[common], help="evaluate a truncated power series")
    sub.add_parser("eval-spherical", parents=[common], help="evaluate a truncated spherical series")
    sub.add_parser("radius", parents=[common], help="estimate the convergence radius of a coefficient list")
    c = sub.add_parser("coeffs", parents=[common], help="expansion coefficients of a polynomial stem")
    c.add_argument("--method", choices=("deriv", "system", "contour"), default="system")
    c.add_argument("--quad-points", type=int, default=512)
    b = sub.add_parser("boundary", parents=[common], help="CSV boundary points of Cassini or sigma balls")
    b.add_argument("--cassini", nargs="+", metavar="KEY=VALUE", help="w=<complex> r=<radius>")
    b.add_argument("--sigma", nargs="+", metavar="KEY=VALUE", help="y=<element> r=<radius>")
    sub.add_parser("metric", parents=[common], help="sigma and tau distances between points")
    v = sub.add_parser("verify", parents=[common], help="run the property suite")
    v.add_argument("--only", nargs="+", help="run only these properties")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cmd = args.command
        if cmd == "eval-power":
            return cmd_eval(args, "power")
        if cmd == "eval-spherical":
            return cmd_eval(args, "spherical")
        return {"radius": cmd_radius, "coeffs": cmd_coeffs, "boundary": cmd_boundary,
                "metric": cmd_metric, "verify": cmd_verify}[cmd](args)
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, AlgebraError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
