"""argparse front end: ``python -m cli <command> <action> [flags]``.

Exit codes: 0 success, 2 usage errors, 1 any other failure (with a JSON error
record on stderr).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import mpmath
from pydantic import BaseModel

from cli.report import CHECKS, report
from cli.sweeps import inner_job, run_sweep, shoot_job
from core.asymptotics import (
    DEFAULT_FIT_RANGE,
    fit_bn,
    gevrey_ratio,
    probe_brusselator_constant,
    sum_smallest_term,
)
from core.complex_ode import integrate_along_path
from core.config import get_settings
from core.errors import CanardError, UsageError
from core.exact_algebra import format_rational
from core.fields import ODEField
from core.formal_canard import canard_formal, vdp_bn, vdp_coefficients
from core.inner_stokes import DEFAULT_DPS, stokes_log_slope
from core.normal_forms import brusselator_alpha, brusselator_normal_form, vdp_normal_form
from core.relief import (
    ComplexPath,
    cols,
    descent_check,
    level_curves,
    relief_spec_by_name,
    steepest_descent_path,
)
from model.FieldKindEnum import FieldKindEnum
from model.FitModelEnum import FitModelEnum
from model.OutputFormatEnum import OutputFormatEnum
from schema.DescentCertificate import DescentCertificateSchema
from schema.IntegratorConfig import IntegratorConfig
from schema.RunConfig import RunConfig
from utility.logging_config import configure_logging
from utility.serialization import atomic_write, dump_csv, dump_json
from utility.svg import contours_to_svg

logger = logging.getLogger(__name__)


# argument parsing helpers

def parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}")


def parse_points(text: str) -> list[complex]:
    points = [parse_complex(part) for part in text.split(",") if part.strip()]
    if len(points) < 2:
        raise UsageError("a path needs at least two points", path=text)
    return points


def parse_floats(text: str) -> list[float]:
    try:
        return [float(Fraction(part.strip())) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a comma-separated list of numbers: {text!r}")


def parse_int_range(text: str) -> tuple[int, int]:
    try:
        start, stop = (int(part) for part in text.split(":"))
    except ValueError:
        raise UsageError(f"expected start:stop, got {text!r}")
    if stop < start:
        raise UsageError("range stop must not be below start", range=text)
    return start, stop


def parse_grid(text: str) -> list[float]:
    """start:stop:step, both ends included; a single number is a one-point grid."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        start, stop, step = (float(part) for part in parts)
    except ValueError:
        raise UsageError(f"expected start:stop:step, got {text!r}")
    if step <= 0 or stop < start:
        raise UsageError("grid needs step > 0 and stop >= start", grid=text)
    count = int(round((stop - start) / step)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def parse_bbox(text: str) -> tuple[float, float, float, float]:
    try:
        xmin, xmax, ymin, ymax = (float(part) for part in text.split(":"))
    except ValueError:
        raise UsageError(f"expected xmin:xmax:ymin:ymax, got {text!r}")
    return xmin, xmax, ymin, ymax


def split_emit_fields(value: str | None) -> tuple[list[str], str | None]:
    """'a,b,json' selects the fields a and b of the output; the last item is the format or path."""
    if value is None or "," not in value:
        return [], value
    *fields, target = (part.strip() for part in value.split(","))
    return [f for f in fields if f], target or None


def resolve_emit(value: str | None, default: OutputFormatEnum) -> tuple[OutputFormatEnum, Path | None]:
    """--emit takes a format name (written to stdout) or a path whose suffix names the format."""
    if value is None:
        return default, None
    formats = {f.value for f in OutputFormatEnum}
    if value in formats:
        return OutputFormatEnum(value), None
    path = Path(value)
    suffix = path.suffix.lstrip(".")
    if suffix not in formats:
        raise UsageError(f"cannot infer an output format from {value!r}", known=sorted(formats))
    return OutputFormatEnum(suffix), path


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# output

def _select_fields(payload, table, fields: list[str]):
    if payload is not None:
        data = payload.model_dump() if isinstance(payload, BaseModel) else dict(payload)
        missing = [f for f in fields if f not in data]
        if missing:
            raise UsageError(f"unknown output fields {missing}", known=sorted(data))
        payload = {f: data[f] for f in fields}
    if table is not None:
        header, rows = table
        missing = [f for f in fields if f not in header]
        if missing:
            table = None
        else:
            columns = [header.index(f) for f in fields]
            table = (list(fields), [[row[i] for i in columns] for row in rows])
    return payload, table


def emit(args, run: RunConfig, payload=None, table=None, svg: str | None = None, markdown: str | None = None):
    fmt = run.output_format
    if run.fields:
        payload, table = _select_fields(payload, table, run.fields)
    if fmt is OutputFormatEnum.json and payload is not None:
        text = dump_json(payload)
    elif fmt is OutputFormatEnum.csv and table is not None:
        text = dump_csv(*table)
    elif fmt is OutputFormatEnum.svg and svg is not None:
        text = svg
    elif fmt is OutputFormatEnum.md and markdown is not None:
        text = markdown
    else:
        raise UsageError(f"{run.command} {run.action or ''} cannot emit {fmt.value}".replace("  ", " "))
    if run.emit is None:
        sys.stdout.write(text)
    else:
        atomic_write(run.emit, text)


# series

def cmd_series_vdp(args, run):
    a = vdp_coefficients(args.n)
    payload = {"family": "vdp", "a": [format_rational(c) for c in a]}
    emit(args, run, payload, (["n", "a_n"], [(n, c) for n, c in enumerate(a)]))


def cmd_series_bn(args, run):
    start, stop = parse_int_range(args.range)
    a = vdp_coefficients(stop)
    values = {n: vdp_bn(a, n, args.digits + 5) for n in range(start, stop + 1)}
    payload = {"digits": args.digits, "b": {n: mpmath.nstr(v, args.digits) for n, v in values.items()}}
    rows = [(n, mpmath.nstr(v, args.digits)) for n, v in values.items()]
    emit(args, run, payload, (["n", "b_n"], rows))


def cmd_series_canard(args, run):
    builder = brusselator_normal_form if args.family == "brusselator" else vdp_normal_form
    solution = canard_formal(builder(args.order, args.x_order))
    alpha = solution.constants()
    payload = {
        "family": args.family,
        "alpha": [format_rational(c) for c in alpha],
        "y": [[format_rational(c) for c in y.coefficients] for y in solution.y],
    }
    emit(args, run, payload, (["n", "alpha_n"], [(n, c) for n, c in enumerate(alpha)]))


# relief

def cmd_relief_contour(args, run):
    spec = relief_spec_by_name(args.spec, args.theta)
    bbox = parse_bbox(args.bbox)
    curves = level_curves(spec, parse_floats(args.levels), bbox, args.res)
    rows = [
        (index, level, point.real, point.imag)
        for index, (level, polyline) in enumerate(curves)
        for point in polyline
    ]
    payload = {
        "spec": spec.name,
        "cols": [[c.real, c.imag] for c in cols(spec)],
        "curves": [{"level": level, "points": [[p.real, p.imag] for p in polyline]} for level, polyline in curves],
    }
    marks = [c for c in cols(spec) if bbox[0] <= c.real <= bbox[1] and bbox[2] <= c.imag <= bbox[3]]
    emit(args, run, payload, (["curve", "level", "re", "im"], rows), svg=contours_to_svg(curves, bbox, marks=marks))


def cmd_relief_descend(args, run):
    spec = relief_spec_by_name(args.spec, args.theta)
    target = parse_complex(args.target) if args.target is not None else None
    path = steepest_descent_path(
        spec, parse_complex(args.start), target, args.stop_radius, args.max_arclength, args.step, args.close
    )
    certificate = DescentCertificateSchema.from_certificate(descent_check(spec, path))
    payload = {"points": [[p.real, p.imag] for p in path.points], "certificate": certificate}
    emit(args, run, payload, (["re", "im"], [(p.real, p.imag) for p in path.points]))


def cmd_relief_check(args, run):
    spec = relief_spec_by_name(args.spec, args.theta)
    path = ComplexPath.through(*parse_points(args.path), samples_per_segment=args.samples)
    certificate = DescentCertificateSchema.from_certificate(descent_check(spec, path))
    header = list(DescentCertificateSchema.model_fields)
    emit(args, run, certificate, (header, [[getattr(certificate, name) for name in header]]))


# ode

def cmd_ode_run(args, run):
    kind = FieldKindEnum(args.field.replace("-", "_"))
    ode = ODEField(kind, eps=parse_complex(args.eps), parameter=parse_complex(args.alpha))
    config = IntegratorConfig(
        rel_tol=args.tol, abs_tol=args.tol * 1e-4, precision_digits=run.precision_digits, max_steps=args.max_steps
    )
    trajectory = integrate_along_path(ode, ComplexPath.through(*parse_points(args.path)), parse_complex(args.y0), config)
    end = mpmath.mpc(trajectory.end_value)
    payload = {
        "field": kind.value,
        "end_value": [mpmath.nstr(end.real, run.precision_digits), mpmath.nstr(end.imag, run.precision_digits)],
        "steps": trajectory.step_count,
        "rejected_steps": trajectory.rejected_steps,
        "trace": trajectory.rows(),
    }
    rows = [(r["s"], r["x_re"], r["x_im"], r["y_re"], r["y_im"]) for r in trajectory.rows()]
    logger.info(f"ode run ended at y={complex(end)}")
    emit(args, run, payload, (["s", "x_re", "x_im", "y_re", "y_im"], rows))


# shoot

def cmd_shoot(args, run):
    config = {"mirror": args.mirror, "max_iterations": args.max_iter}
    if args.digits != "auto":
        try:
            config["precision_digits"] = int(args.digits)
        except ValueError:
            raise UsageError("--digits takes an integer or 'auto'", digits=args.digits)
    eps_values = parse_floats(args.eps)
    results = run_sweep(shoot_job, [(args.family, eps, config) for eps in eps_values], run.jobs)
    if args.record:
        from crud.ShootRecord import create_shoot_record
        from db.database import base, engine, sessionLocal

        base.metadata.create_all(bind=engine)
        with sessionLocal() as db:
            for result in results:
                create_shoot_record(db, result)
    name = "alpha" if args.family == "vdp" else "a"
    header = ["eps", f"re_{name}", f"im_{name}", "stokes_observable", "iterations", "residual"]
    rows = [(r.eps, r.re_parameter, r.im_parameter, r.stokes_observable, r.iterations, r.residual) for r in results]
    emit(args, run, {"family": args.family, "results": results}, (header, rows))


# inner

def cmd_inner(args, run):
    xs = parse_grid(args.x)
    samples = run_sweep(inner_job, [(args.family, x, args.dps) for x in xs], run.jobs)
    payload = {"family": args.family, "samples": samples}
    if len(samples) >= 2:
        powers = (2, 3) if args.family == "vdp" else (4, 2)
        payload["log_slope"] = stokes_log_slope(samples, *powers)
    header = ["X", "diff_re", "diff_im", "formula", "ratio"]
    rows = [(s.x, s.diff_re, s.diff_im, s.formula, s.ratio) for s in samples]
    emit(args, run, payload, (header, rows))


# asymptotics

def _series_for(family: str, n: int) -> tuple:
    if family == "vdp":
        return vdp_coefficients(n)
    return (Fraction(1), *brusselator_alpha(n - 1))


def cmd_asymp_fit(args, run):
    start, stop = parse_int_range(args.range)
    a = vdp_coefficients(stop)
    points = [(n, float(vdp_bn(a, n, 20))) for n in range(start, stop + 1)]
    result = fit_bn(points, FitModelEnum(args.model))
    header = list(type(result).model_fields)
    emit(args, run, result, (header, [[getattr(result, name) for name in header]]))


def cmd_asymp_ratio(args, run):
    ratios = gevrey_ratio(_series_for(args.family, args.n))
    emit(args, run, {"family": args.family, "r": ratios}, (["n", "r_n"], list(enumerate(ratios))))


def cmd_asymp_sum(args, run):
    a = vdp_coefficients(args.n)
    results = [sum_smallest_term(a, eps) for eps in parse_floats(args.eps)]
    header = ["eps", "value", "n_opt", "smallest_term"]
    rows = [(r.eps, r.value_text, r.n_opt, r.smallest_term) for r in results]
    emit(args, run, {"results": results}, (header, rows))


def cmd_asymp_probe(args, run):
    result = probe_brusselator_constant(_series_for("brusselator", args.n), args.levels)
    rows = [(n, c) for n, c in zip(result.n, result.c_n)]
    emit(args, run, result, (["n", "c_n"], rows))


def cmd_report(args, run):
    targets = list(CHECKS) if args.targets == "all" else [t for t in args.targets.split(",") if t.strip()]
    emit(args, run, markdown=report(targets))


# parser

def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", help="output format (json, csv, svg, md) or a file path with that suffix, optionally after field names: a,json")
    common.add_argument("--jobs", type=int, default=settings.jobs, help="parallel sweep workers")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = _Parser(prog="canard", description="Canard series, relief paths, shooting and Stokes diagnostics")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    series = commands.add_parser("series", help="exact formal series").add_subparsers(dest="action", required=True)
    p = series.add_parser("vdp", parents=[common], help="Van der Pol coefficients a_0..a_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_series_vdp, default_format=OutputFormatEnum.json)
    p = series.add_parser("bn", parents=[common], help="scaled coefficients b_n")
    p.add_argument("--range", default=f"{DEFAULT_FIT_RANGE[0]}:{DEFAULT_FIT_RANGE[1]}")
    p.add_argument("--digits", type=int, default=12, help="printed significant digits")
    p.set_defaults(handler=cmd_series_bn, default_format=OutputFormatEnum.csv)
    p = series.add_parser("canard", parents=[common], help="formal canard of a shipped normal form")
    p.add_argument("--family", choices=["vdp", "brusselator"], default="brusselator")
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--x-order", type=int, default=None)
    p.set_defaults(handler=cmd_series_canard, default_format=OutputFormatEnum.json)

    relief = commands.add_parser("relief", help="relief contours and paths").add_subparsers(dest="action", required=True)
    p = relief.add_parser("contour", parents=[common], help="level curves of R")
    p.add_argument("--spec", default="vdp")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--levels", required=True)
    p.add_argument("--bbox", default="-3:3:-3:3")
    p.add_argument("--res", type=int, default=400)
    p.set_defaults(handler=cmd_relief_contour, default_format=OutputFormatEnum.svg)
    p = relief.add_parser("descend", parents=[common], help="steepest descent line")
    p.add_argument("--spec", default="vdp")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--start", required=True)
    p.add_argument("--target", default=None)
    p.add_argument("--stop-radius", type=float, default=1e-3)
    p.add_argument("--max-arclength", type=float, default=100.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--close", action="store_true", help="append the target as the last vertex")
    p.set_defaults(handler=cmd_relief_descend, default_format=OutputFormatEnum.json)
    p = relief.add_parser("check", parents=[common], help="descent certificate of a polyline")
    p.add_argument("--spec", default="vdp")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--path", required=True, help='comma-separated vertices, e.g. "-1+10i,0,1"')
    p.add_argument("--samples", type=int, default=64)
    p.set_defaults(handler=cmd_relief_check, default_format=OutputFormatEnum.json)

    ode = commands.add_parser("ode", help="complex-path integration").add_subparsers(dest="action", required=True)
    p = ode.add_parser("run", parents=[common], help="integrate along a polyline")
    p.add_argument("--field", required=True, choices=[k.value.replace("_", "-") for k in FieldKindEnum])
    p.add_argument("--eps", default="0.1")
    p.add_argument("--alpha", default="1", help="alpha (Van der Pol) or a (Brusselator)")
    p.add_argument("--path", required=True)
    p.add_argument("--y0", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--digits", dest="precision", type=int, default=settings.precision_digits,
                   help="working precision in decimal digits")
    p.add_argument("--max-steps", type=int, default=200000)
    p.set_defaults(handler=cmd_ode_run, default_format=OutputFormatEnum.csv)

    shoot = commands.add_parser("shoot", help="canard parameter by shooting")
    shoot_actions = shoot.add_subparsers(dest="action", required=True)
    for family in ("vdp", "brusselator"):
        p = shoot_actions.add_parser(family, parents=[common])
        p.add_argument("--eps", required=True, help="comma-separated eps values")
        p.add_argument("--digits", default="auto", help="'auto' or an integer")
        p.add_argument("--mirror", action="store_true")
        p.add_argument("--max-iter", type=int, default=40)
        p.add_argument("--record", action="store_true", help="store results in the database")
        p.set_defaults(family=family, handler=cmd_shoot, default_format=OutputFormatEnum.csv)

    inner = commands.add_parser("inner", help="inner solutions and Stokes differences")
    inner_actions = inner.add_subparsers(dest="action", required=True)
    for family in ("vdp", "brusselator"):
        p = inner_actions.add_parser(family, parents=[common])
        p.add_argument("--x", required=True, help="start:stop:step")
        p.add_argument("--dps", type=int, default=DEFAULT_DPS)
        p.set_defaults(family=family, handler=cmd_inner, default_format=OutputFormatEnum.csv)

    asymp = commands.add_parser("asymp", help="asymptotic diagnostics").add_subparsers(dest="action", required=True)
    p = asymp.add_parser("fit", parents=[common], help="least-squares limit of b_n")
    p.add_argument("--model", choices=[m.value for m in FitModelEnum], default=FitModelEnum.inv_sqrt_n.value)
    p.add_argument("--range", default=f"{DEFAULT_FIT_RANGE[0]}:{DEFAULT_FIT_RANGE[1]}")
    p.set_defaults(handler=cmd_asymp_fit, default_format=OutputFormatEnum.json)
    p = asymp.add_parser("ratio", parents=[common], help="Gevrey ratios")
    p.add_argument("--family", choices=["vdp", "brusselator"], default="vdp")
    p.add_argument("--n", type=int, default=30)
    p.set_defaults(handler=cmd_asymp_ratio, default_format=OutputFormatEnum.csv)
    p = asymp.add_parser("sum", parents=[common], help="Van der Pol summation at the smallest term")
    p.add_argument("--eps", required=True)
    p.add_argument("--n", type=int, default=155)
    p.set_defaults(handler=cmd_asymp_sum, default_format=OutputFormatEnum.csv)
    p = asymp.add_parser("probe-brusselator", parents=[common], help="Brusselator constant probe")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--levels", type=int, default=2)
    p.set_defaults(handler=cmd_asymp_probe, default_format=OutputFormatEnum.json)

    p = commands.add_parser("report", parents=[common], help="acceptance report")
    p.add_argument("--targets", default="", help="comma-separated check ids, or 'all'")
    p.set_defaults(handler=cmd_report, default_format=OutputFormatEnum.md)
    return parser


def _run_config(args) -> RunConfig:
    fields, target = split_emit_fields(args.emit)
    fmt, path = resolve_emit(target, args.default_format)
    precision = getattr(args, "precision", None) or get_settings().precision_digits
    return RunConfig(
        command=args.command,
        action=getattr(args, "action", None),
        output_format=fmt,
        emit=str(path) if path else None,
        fields=fields,
        seed=args.seed,
        precision_digits=precision,
        jobs=max(1, args.jobs),
    )


def main(argv: list[str] | None = None) -> int:
    configure_logging()
    try:
        args = build_parser().parse_args(argv)
        run = _run_config(args)
        logger.debug(f"Attempting {run.command} {run.action or ''}")
        args.handler(args, run)
        logger.info(f"Successfully ran {run.command} {run.action or ''}")
        return 0
    except SystemExit as e:
        # --help exits 0 through argparse
        return int(e.code or 0)
    except UsageError as e:
        logger.warning(f"Usage error: {e.message}")
        sys.stderr.write(f"error: {e.message}\n")
        return 2
    except CanardError as e:
        logger.error(f"{e.code}: {e.message}")
        sys.stderr.write(json.dumps(e.to_record()) + "\n")
        return 1
    except Exception as e:
        logger.error(f"Unexpected failure: {e}")
        record = {"error": "internal_error", "message": str(e), "details": {"type": type(e).__name__}}
        sys.stderr.write(json.dumps(record) + "\n")
        return 1


dispatch = main
