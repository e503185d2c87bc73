"""Command-line front end: JSON configs in, CSV grids and JSON reports out.

Exit status is 0 on success, 1 for invalid input, 2 for numerical failures
and 64 for malformed command lines.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import dynamics as dyn
from .errors import (
    DomainError,
    EmptyGrid,
    NonConvergence,
    NumericalError,
    OptoSqueezeError,
    ParseError,
    SpecError,
    ValidationError,
)
from .measures import DEFAULT_THRESHOLD, nonlocality_report, pair_from_string, physicality
from .model import DETUNING_MODES, PhysicalParams, build_diffusion, build_drift, derive_params, rwa_validity
from .oracle import run_all
from .sweep import (
    OUTPUT_GROUPS,
    Axis,
    FigureRecipe,
    SweepResult,
    SweepSpec,
    figure_recipe,
    find_crossing,
    find_extremum,
    run_dynamics,
    run_sweep,
)

__all__ = ["RunConfig", "parse_config", "emit_config", "load_config", "run_command", "main"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_USAGE = 64

FLOAT_FMT = "{:.8e}"

# config key -> PhysicalParams field
RATE_KEYS = {
    "kappa1_per_wm": "kappa1",
    "kappa2_per_wm": "kappa2",
    "gamma_m_per_wm": "gamma_m",
    "J_per_wm": "J",
    "g_per_wm": "g",
    "E_per_wm": "E",
    "delta2_per_wm": "delta2",
    "delta_per_wm": "delta",
    "Omega_p_per_wm": "Omega_p",
    "Delta1_per_wm": "Delta1",
}
PLAIN_KEYS = {"r": "r", "theta": "theta", "mbar": "mbar"}
REQUIRED_KEYS = (
    "kappa1_per_wm", "kappa2_per_wm", "gamma_m_per_wm", "J_per_wm",
    "g_per_wm", "E_per_wm", "delta2_per_wm", "delta_per_wm",
)
OPTIONAL_PARAM_KEYS = ("Omega_p_per_wm", "r", "theta", "mbar", "Delta1_per_wm")
RUN_KEYS = ("detuning_mode", "omega_m_hz", "threshold", "pair", "axes", "outputs", "figure", "out")
KNOWN_KEYS = REQUIRED_KEYS + OPTIONAL_PARAM_KEYS + RUN_KEYS


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated contents of a JSON config document."""

    params: PhysicalParams
    omega_m_hz: Optional[float] = None
    threshold: float = DEFAULT_THRESHOLD
    pair: Tuple[str, str] = ("a2", "b")
    axes: Tuple[Axis, ...] = ()
    outputs: Tuple[str, ...] = ("nonlocality",)
    figure: Optional[str] = None
    out: Optional[str] = None


def _number(doc: Mapping, key: str) -> float:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{key}: expected a number, got {value!r}", key)
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{key}: value must be finite", key)
    return value


def _string(doc: Mapping, key: str) -> str:
    value = doc[key]
    if not isinstance(value, str):
        raise ValidationError(f"{key}: expected a string, got {value!r}", key)
    return value


def _string_list(doc: Mapping, key: str) -> List[str]:
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValidationError(f"{key}: expected a list of strings", key)
    return value


def parse_config(document) -> RunConfig:
    """Validate a config given as JSON text or an already decoded mapping.

    Defaults are ``theta=0``, ``mbar=0`` and ``detuning_mode='fixed-red'``.
    Every :class:`ValidationError` carries the offending key in ``.key``.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise ParseError("config must be a JSON object")

    unknown = sorted(set(document) - set(KNOWN_KEYS))
    if unknown:
        raise ValidationError(f"unknown config keys: {', '.join(unknown)}", unknown[0])
    missing = [k for k in REQUIRED_KEYS if k not in document]
    if missing:
        raise ValidationError(f"missing required keys: {', '.join(missing)}", missing[0])

    fields = {RATE_KEYS[k]: _number(document, k) for k in REQUIRED_KEYS}
    for key in OPTIONAL_PARAM_KEYS:
        if key in document and document[key] is not None:
            fields[RATE_KEYS.get(key) or PLAIN_KEYS[key]] = _number(document, key)
    if "Omega_p_per_wm" in document and "r" in document:
        raise ValidationError("give either Omega_p_per_wm or r, not both", "r")
    omega_p = fields.get("Omega_p")
    if omega_p:
        if fields["delta2"] == 0.0 or abs(omega_p / fields["delta2"]) >= 1.0:
            raise ValidationError(
                "Omega_p_per_wm/delta2_per_wm must lie in (-1, 1), the domain of arctanh",
                "Omega_p_per_wm",
            )
    if "detuning_mode" in document:
        mode = _string(document, "detuning_mode")
        if mode not in DETUNING_MODES:
            raise ValidationError(f"detuning_mode must be one of {DETUNING_MODES}", "detuning_mode")
        fields["detuning_mode"] = mode
        if mode == "self-consistent" and "Delta1" not in fields:
            raise ValidationError("self-consistent detuning needs Delta1_per_wm", "Delta1_per_wm")

    omega_m_hz = None
    if document.get("omega_m_hz") is not None:
        omega_m_hz = _number(document, "omega_m_hz")
        if omega_m_hz <= 0:
            raise ValidationError("omega_m_hz must be positive", "omega_m_hz")
        fields["omega_m"] = 2 * math.pi * omega_m_hz

    try:
        params = PhysicalParams(**fields)
    except DomainError as exc:
        text = str(exc)
        key = next((k for k, f in {**RATE_KEYS, **PLAIN_KEYS}.items() if text.startswith(f + " ")), None)
        raise ValidationError(text, key) from exc

    extra = {}
    if "threshold" in document:
        extra["threshold"] = _number(document, "threshold")
        if extra["threshold"] < 0:
            raise ValidationError("threshold must be non-negative", "threshold")
    if "pair" in document:
        try:
            extra["pair"] = pair_from_string(_string(document, "pair"))
        except (ValueError, IndexError) as exc:
            raise ValidationError(str(exc), "pair") from exc
    if "axes" in document:
        axes = []
        for i, text in enumerate(_string_list(document, "axes")):
            try:
                axes.append(Axis.parse(text))
            except SpecError as exc:
                raise ValidationError(str(exc), f"axes[{i}]") from exc
        extra["axes"] = tuple(axes)
    if "outputs" in document:
        outputs = _string_list(document, "outputs")
        for i, name in enumerate(outputs):
            if name not in OUTPUT_GROUPS:
                raise ValidationError(f"unknown output {name!r}", f"outputs[{i}]")
        extra["outputs"] = tuple(outputs)
    for key in ("figure", "out"):
        if document.get(key) is not None:
            extra[key] = _string(document, key)
    return RunConfig(params, omega_m_hz, **extra)


def emit_config(config: RunConfig) -> Dict[str, object]:
    """Inverse of :func:`parse_config`."""
    p = config.params
    doc: Dict[str, object] = {}
    for key, name in RATE_KEYS.items():
        value = getattr(p, name)
        if value is not None:
            doc[key] = value
    if p.r is not None:
        doc["r"] = p.r
    doc["theta"] = p.theta
    doc["mbar"] = p.mbar
    doc["detuning_mode"] = p.detuning_mode
    if config.omega_m_hz is not None:
        doc["omega_m_hz"] = config.omega_m_hz
    doc["threshold"] = config.threshold
    doc["pair"] = "-".join(config.pair)
    if config.axes:
        doc["axes"] = [a.format() for a in config.axes]
    doc["outputs"] = list(config.outputs)
    if config.figure is not None:
        doc["figure"] = config.figure
    if config.out is not None:
        doc["out"] = config.out
    return doc


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path!r}: {exc.strerror}", "config") from exc
    return parse_config(text)


# ---------------------------------------------------------------------------
# serialization


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT.format(float(value))
    return "" if value is None else str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


# ---------------------------------------------------------------------------
# subcommands


def _pair(args, config: RunConfig) -> Tuple[str, str]:
    if args.pair is None:
        return config.pair
    try:
        return pair_from_string(args.pair)
    except (ValueError, IndexError) as exc:
        raise ValidationError(str(exc), "pair") from exc


def _system(p: PhysicalParams):
    d = derive_params(p)
    return d, build_drift(p, d), build_diffusion(p, d)


def cmd_steady(args) -> int:
    config = load_config(args.config)
    a, b = _pair(args, config)
    p = config.params
    d, m, dm = _system(p)
    stab = dyn.stability_check(m)
    v = dyn.steady_state(m, dm)
    report = nonlocality_report(v, a, b, config.threshold)
    rwa = rwa_validity(p, d)
    out = {
        "report": report.to_dict(),
        "stability": {"stable": stab.stable, "max_real_part": stab.max_real_part},
        "min_symplectic_eigenvalue": physicality(v).min_symplectic_eigenvalue,
        "lyapunov_residual": dyn.residual(m, dm, v),
        "derived": d.to_dict(),
        "rwa": {"ratio": rwa.ratio, "warning": rwa.warning, "threshold": rwa.threshold},
        "config": emit_config(config),
    }
    text = dumps(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_evolve(args) -> int:
    config = load_config(args.config)
    a, b = _pair(args, config)
    p = config.params
    _, m, dm = _system(p)
    trace = dyn.evolve(m, dm, dyn.vacuum_initial_state(p.mbar), args.t_max, dt=args.dt, stride=args.stride)
    idx = [(i, j) for i in range(6) for j in range(i, 6)]
    header = ["t", "EN", f"G_{a}_to_{b}", f"G_{b}_to_{a}", "region", "residual"]
    header += [f"V{i}{j}" for i, j in idx]
    rows = []
    for t, v in zip(trace.times, trace.covariances):
        rep = nonlocality_report(v, a, b, config.threshold)
        rows.append([float(t), rep.e_n, rep.g_12, rep.g_21, rep.region, dyn.residual(m, dm, v)]
                    + [v[i, j] for i, j in idx])
    write_csv(args.out, header, rows)
    print(f"wrote {len(rows)} samples to {args.out} "
          f"(dt={trace.dt:.6g}, converged={trace.converged}, final residual={trace.final_residual:.3e})")
    return EXIT_OK


def _grid_csv(path: str, result: SweepResult) -> None:
    write_csv(path, result.spec.columns(), result.rows())


def _regions_csv(path: str, result: SweepResult) -> None:
    header = [a.column for a in result.spec.axes] + ["region", "direction"]
    write_csv(path, header, result.region_rows())


def _portable_metadata(result: SweepResult) -> dict:
    return {k: v for k, v in result.metadata.items() if k != "wall_time_s"}


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    if args.axis:
        try:
            axes = tuple(Axis.parse(text) for text in args.axis)
        except SpecError as exc:
            raise ValidationError(str(exc), "axis") from exc
    else:
        axes = config.axes
    if not axes:
        raise ValidationError("no sweep axes given (use --axis or the 'axes' config key)", "axes")
    outputs = tuple(args.outputs.split(",")) if args.outputs else config.outputs
    spec = SweepSpec(config.params, axes, _pair(args, config), outputs, threshold=config.threshold)
    out = args.out or config.out
    if not out:
        raise ValidationError("no output path given (use --out or the 'out' config key)", "out")
    result = run_sweep(spec, workers=args.workers)
    _grid_csv(out, result)
    meta = result.metadata
    print(f"wrote {meta['points']} points to {out} (unstable={meta['unstable']}, errors={meta['errors']})")
    return EXIT_OK


def _deviation(computed: float, target: float) -> dict:
    return {
        "target": target,
        "computed": computed,
        "rel_deviation": (computed - target) / target,
    }


def _refined_maxima(spec: SweepSpec, result: SweepResult, keys, refine_iters: int) -> dict:
    out = {}
    for key in keys:
        ext = find_extremum(spec, key, refine_iters=refine_iters, coarse=result)
        out[key] = {"value": ext.value, "at": ext.point, "history": ext.history}
    return out


def _fig3_summary(spec: SweepSpec, result: SweepResult, targets: dict, refine_iters: int) -> dict:
    mode = spec.variance_mode
    key = f"var_y_{mode}"
    ext = find_extremum(spec, "-" + key, refine_iters=refine_iters, coarse=result)
    r_min = ext.point["r"]
    recross = find_crossing(spec, key, 0.5, after=r_min, coarse=result)
    out = {
        "var_y_min": {"value": -ext.value, "at": ext.point, "history": [-h for h in ext.history]},
        "var_y_recross_r": recross,
    }
    computed = {"var_y_min": -ext.value, "var_y_argmin_r": r_min, "var_y_recross_r": recross}
    out["targets"] = {
        k: (_deviation(computed[k], t) if computed[k] is not None else {"target": t, "computed": None})
        for k, t in targets.items()
    }
    out["targets"]["var_y_argmin_r"]["abs_deviation"] = r_min - targets["var_y_argmin_r"]
    if recross is not None:
        out["targets"]["var_y_recross_r"]["abs_deviation"] = recross - targets["var_y_recross_r"]
    return out


def _fig2_outputs(recipe: FigureRecipe, directory: str) -> dict:
    res = run_dynamics(recipe.dynamics)
    a, b = recipe.dynamics.pair
    rows = []
    for r, reports in res.reports.items():
        for t, rep in zip(res.traces[r].times, reports):
            rows.append([r, float(t), rep.e_n, rep.g_21, rep.g_12, rep.region])
    write_csv(os.path.join(directory, "traces.csv"),
              ["r", "t", "EN", f"G_{b}_to_{a}", f"G_{a}_to_{b}", "region"], rows)
    steady = {}
    for r, rep in res.steady.items():
        trace_final = res.reports[r][-1]
        steady[repr(r)] = {
            **rep.to_dict(),
            "rwa_ratio": res.rwa[r],
            "trace_final_EN": trace_final.e_n,
            "trace_converged": res.traces[r].converged,
        }
    return {"steady": steady, "dynamics": recipe.dynamics.to_dict()}


def _run_panel(name: str, spec: SweepSpec, recipe: FigureRecipe, directory: str,
               workers: int, refine_iters: int) -> dict:
    os.makedirs(directory, exist_ok=True)
    result = run_sweep(spec, workers=workers)
    _grid_csv(os.path.join(directory, "grid.csv"), result)
    _regions_csv(os.path.join(directory, "regions.csv"), result)
    summary = {
        "figure": recipe.name,
        "panel": name,
        "spec": spec.to_dict(),
        "grid_extrema": result.extrema,
        "metadata": _portable_metadata(result),
        "min_symplectic_eigenvalue": min(
            (rec.min_symplectic for rec in result.records if rec.ok), default=None
        ),
        "region_counts": _region_counts(result),
    }
    objectives = recipe.objectives.get(name, ())
    if name == "fig3":
        summary["refined"] = _fig3_summary(spec, result, recipe.targets, refine_iters)
    elif objectives:
        refined = _refined_maxima(spec, result, objectives, refine_iters)
        summary["refined"] = refined
        summary["targets"] = {
            k: _deviation(refined[k]["value"], t) for k, t in recipe.targets.items() if k in refined
        }
    if recipe.dynamics is not None:
        summary.update(_fig2_outputs(recipe, directory))
    write_json(os.path.join(directory, "extrema.json"), summary)
    return summary


def _region_counts(result: SweepResult) -> dict:
    counts: Dict[str, int] = {}
    for rec in result.records:
        key = rec.region or "unavailable"
        if rec.report is not None and rec.report.direction_label:
            key = f"{key}({rec.report.direction_label})"
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


def cmd_figure(args) -> int:
    try:
        recipe = figure_recipe(args.name, grid=args.grid)
    except SpecError as exc:
        raise ValidationError(str(exc), "figure") from exc
    os.makedirs(args.out, exist_ok=True)
    multi = len(recipe.panels) > 1
    for name, spec in recipe.panels.items():
        directory = os.path.join(args.out, name) if multi else args.out
        summary = _run_panel(name, spec, recipe, directory, args.workers, args.refine_iters)
        meta = summary["metadata"]
        print(f"{name}: {meta['points']} points, unstable={meta['unstable']}, "
              f"errors={meta['errors']} -> {directory}")
    return EXIT_OK


def cmd_oracles(args) -> int:
    reports = run_all(seed=args.seed)
    for rep in reports:
        print(rep.summary())
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="optosqueeze", description="Steady-state and transient entanglement/steering "
                     "of the squeezed optomechanical network.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("steady", help="steady-state report for one parameter set")
    p.add_argument("--config", required=True)
    p.add_argument("--pair", help="mode pair such as a2-b (default: config value)")
    p.add_argument("--out", help="also write the report to this JSON file")
    p.set_defaults(func=cmd_steady)

    p = sub.add_parser("evolve", help="RK4 covariance trace from vacuum")
    p.add_argument("--config", required=True)
    p.add_argument("--t-max", type=_positive_float, required=True, help="duration in units of 1/omega_m")
    p.add_argument("--stride", type=_positive_int, default=1, help="keep every K-th step")
    p.add_argument("--dt", type=_positive_float, help="override the automatic step")
    p.add_argument("--pair")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("sweep", help="1D or 2D grid of steady-state reports")
    p.add_argument("--config", required=True)
    p.add_argument("--axis", action="append", help="NAME=MIN:MAX:COUNT[:log], repeatable")
    p.add_argument("--pair")
    p.add_argument("--outputs", help=f"comma separated subset of {','.join(OUTPUT_GROUPS)}")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="run a named figure recipe")
    p.add_argument("name")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--grid", type=_positive_int, default=101, help="points per axis of 2D panels")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--refine-iters", type=int, default=3)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("oracles", help="run the oracle suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracles)
    return parser


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValidationError, ParseError, SpecError, DomainError) as exc:
        key = getattr(exc, "key", None)
        where = f" [{key}]" if key else ""
        print(f"error{where}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, NonConvergence, EmptyGrid) as exc:
        print(f"numerical error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OptoSqueezeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run_command())
