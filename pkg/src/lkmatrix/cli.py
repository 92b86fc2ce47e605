"""Batch front-end: run a JSON scenario and emit a JSON or CSV report.

Usage::

    lkmatrix eval --payload '{"omega": {"alpha": [1]}, "xi": {"diag": [1]}}'
    lkmatrix --scenario scenario.json --out report.json
    lkmatrix haar-test --scenario haar.json --format csv --out ladder.csv

Exit status is 0 on success or a passing verdict, 1 on a failing verdict and
2 on invalid input or a numerical domain error.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import sys
import time
from importlib import resources
from typing import Callable

import jsonschema
import numpy as np

from . import __version__
from .definiteness import DEFAULT_TOL, negative_type_check, positive_type_check, sample_points, schoenberg_check
from .errors import DomainError, NumericError
from .haar import multiplicativity_ladder
from .levy import (
    DiscreteOmegaMeasure,
    LevyTriple,
    bochner_forward,
    bochner_kernel,
    drift_sweep,
    lk_forward,
    lk_kernel,
    recover_A,
    recover_measure,
)
from .omega import OmegaParam, omega_norm
from .spherical import (
    MatrixPoint,
    hs_norm,
    log_spherical,
    remainder,
    remainder_bound,
    singular_values,
    small_omega_linear_bound,
    spherical_eval,
    trace_square,
)

__all__ = ["KINDS", "load_schema", "validate_scenario", "run_scenario", "emit_csv", "main"]

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class ScenarioError(ValueError):
    """Scenario failed schema validation."""


def load_schema(name: str = "scenario") -> dict:
    text = resources.files("lkmatrix").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def _path(error: jsonschema.ValidationError) -> str:
    out = ""
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<scenario>"


def validate_scenario(scenario: dict) -> None:
    """Raise :class:`ScenarioError` with a field-level message on schema violation."""
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = list(validator.iter_errors(scenario))
    if errors:
        # the deepest error is the most specific one
        err = max(errors, key=lambda e: len(list(e.absolute_path)))
        if err.context:
            err = max(err.context, key=lambda e: len(list(e.absolute_path)))
        raise ScenarioError(f"{_path(err)}: {err.message}")


def _points(source, seed: int) -> tuple[list[MatrixPoint], list]:
    if isinstance(source, dict):
        rng = np.random.default_rng(seed)
        pts = sample_points(rng, source["random"], source["n"])
        return pts, [p.to_json() for p in pts]
    pts = [MatrixPoint.from_json(p) for p in source]
    return pts, source


def _kind_eval(p, tol, seed):
    omega, xi = OmegaParam.from_json(p["omega"]), MatrixPoint.from_json(p["xi"])
    result = {
        "value": spherical_eval(omega, xi),
        "log_value": log_spherical(omega, xi),
        "singular_values": singular_values(xi).values.tolist(),
        "trace_square": trace_square(xi),
    }
    return result, None


def _kind_bochner(p, tol, seed):
    mu = DiscreteOmegaMeasure.from_json(p["mu"])
    return {"value": bochner_forward(mu, MatrixPoint.from_json(p["xi"]))}, None


def _kind_lk_forward(p, tol, seed):
    triple = LevyTriple.from_json(p["triple"])
    return {"value": lk_forward(triple, MatrixPoint.from_json(p["xi"]))}, None


def _kind_check_pd(p, tol, seed):
    kernel = p["kernel"]
    if "omega" in kernel:
        omega = OmegaParam.from_json(kernel["omega"])
        f = lambda xi: spherical_eval(omega, xi)  # noqa: E731
    else:
        f = bochner_kernel(DiscreteOmegaMeasure.from_json(kernel["mu"]))
    pts, _ = _points(p["points"], seed)
    report = positive_type_check(f, pts, tol)
    return report.to_json(), report.verdict


def _kind_check_nd(p, tol, seed):
    pts, _ = _points(p["points"], seed)
    report = negative_type_check(lk_kernel(LevyTriple.from_json(p["triple"])), pts, tol)
    return report.to_json(), report.verdict


def _kind_schoenberg(p, tol, seed):
    pts, _ = _points(p["points"], seed)
    reports = schoenberg_check(lk_kernel(LevyTriple.from_json(p["triple"])), pts, p["t_grid"], tol)
    rows = [{"t": t, **r.to_json()} for t, r in zip(p["t_grid"], reports)]
    verdict = "pass" if all(r.passed for r in reports) else "fail"
    return {"grid": rows, "verdict": verdict}, verdict


def _kind_recover_a(p, tol, seed):
    psi = lk_kernel(LevyTriple.from_json(p["triple"]))
    s, g = drift_sweep(psi, p["n"], p["s_grid"])
    a_hat = recover_A(psi, p["n"], p["s_grid"])
    return {"A_hat": a_hat, "sweep": [{"s": float(a), "g": float(b)} for a, b in zip(s, g)]}, None


def _kind_recover_measure(p, tol, seed):
    psi = lk_kernel(LevyTriple.from_json(p["triple"]))
    grid = [OmegaParam.from_json(o) for o in p["grid"]]
    probes = [MatrixPoint.from_json(q) for q in p["probes"]]
    rec = recover_measure(psi, probes, grid)
    return rec.to_json(), None


def _kind_haar_test(p, tol, seed):
    omega = OmegaParam.from_json(p["omega"])
    xi, eta = MatrixPoint.from_json(p["xi"]), MatrixPoint.from_json(p["eta"])
    seeds = [seed + i for i in range(p["n_seeds"])]
    rows = multiplicativity_ladder(omega, xi, eta, p["n_ladder"], p["n_samples"], seeds)
    devs = [r["abs_dev"] for r in rows]
    last = rows[-1]
    within = last["abs_dev"] <= max(3 * last["stderr"], 0.05 * last["target"])
    result = {
        "ladder": rows,
        "decreasing": all(b < a for a, b in zip(devs, devs[1:])),
        "within_tolerance": within,
    }
    return result, "pass" if within else "fail"


def _kind_lemma_bounds(p, tol, seed):
    omega, xi = OmegaParam.from_json(p["omega"]), MatrixPoint.from_json(p["xi"])
    r = remainder(omega, xi)
    bound = remainder_bound(omega, xi)
    result = {
        "omega_norm": omega_norm(omega),
        "hs_norm": hs_norm(xi),
        "remainder": r,
        "remainder_bound": bound,
        "remainder_holds": abs(r) <= bound,
    }
    holds = result["remainder_holds"]
    if "rho" in p and "eps" in p:
        c = small_omega_linear_bound(p["rho"], p["eps"])
        gap = 1.0 - spherical_eval(omega, xi)
        applicable = omega_norm(omega) <= p["eps"] and hs_norm(xi) <= p["rho"]
        result.update({"linear_constant": c, "one_minus_phi": gap, "linear_applicable": applicable,
                       "linear_holds": (not applicable) or abs(gap) <= c * omega_norm(omega)})
        holds = holds and result["linear_holds"]
    return result, "pass" if holds else "fail"


DEFAULT_PROBES = [{"diag": [s, 0.0]} for s in (0.25, 0.5, 1.0, 2.0, 4.0)] + [
    {"diag": [a, b]} for a in (0.5, 1.0, 2.0) for b in (0.5, 1.0, 2.0)
]

# kind -> (handler, operation exercised, payload defaults)
KINDS: dict[str, tuple[Callable, str, dict]] = {
    "eval": (_kind_eval, "spherical.spherical_eval", {}),
    "bochner": (_kind_bochner, "levy.bochner_forward", {}),
    "lk-forward": (_kind_lk_forward, "levy.lk_forward", {}),
    "check-pd": (_kind_check_pd, "definiteness.positive_type_check", {}),
    "check-nd": (_kind_check_nd, "definiteness.negative_type_check", {}),
    "schoenberg": (_kind_schoenberg, "definiteness.schoenberg_check", {"t_grid": [0.1, 1.0, 10.0]}),
    "recover-a": (_kind_recover_a, "levy.recover_A", {"n": 1, "s_grid": [10.0, 30.0, 100.0]}),
    "recover-measure": (_kind_recover_measure, "levy.recover_measure", {"probes": DEFAULT_PROBES}),
    "haar-test": (_kind_haar_test, "haar.multiplicativity_estimate",
                  {"n_ladder": [5, 10, 20], "n_samples": 4000, "n_seeds": 1}),
    "lemma-bounds": (_kind_lemma_bounds, "spherical.remainder_bound", {}),
}


def _materialize(scenario: dict) -> dict:
    out = copy.deepcopy(scenario)
    out.setdefault("payload", {})
    out.setdefault("tol", DEFAULT_TOL)
    out.setdefault("seed", 0)
    for key, value in KINDS[out["kind"]][2].items():
        out["payload"].setdefault(key, copy.deepcopy(value))
    return out


def run_scenario(scenario: dict) -> dict:
    """Validate and run a scenario, returning the report document.

    Raises :class:`ScenarioError` for schema violations and
    :class:`~lkmatrix.errors.DomainError` / :class:`~lkmatrix.errors.NumericError`
    from the numerical modules.
    """
    validate_scenario(scenario)
    scenario = _materialize(scenario)
    handler, operation, _ = KINDS[scenario["kind"]]
    start = time.perf_counter()
    result, verdict = handler(copy.deepcopy(scenario["payload"]), scenario["tol"], scenario["seed"])
    elapsed = time.perf_counter() - start
    report = {
        "scenario": scenario,
        "operation": operation,
        "result": result,
        "verdict": verdict,
        "meta": {"version": __version__, "elapsed_s": elapsed},
    }
    return json.loads(json.dumps(report, allow_nan=False, default=_json_default))


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def exit_code(report: dict) -> int:
    return EXIT_FAIL if report.get("verdict") == "fail" else EXIT_OK


def _csv_rows(report: dict) -> tuple[list[str], list[list]]:
    kind, result = report["scenario"]["kind"], report["result"]
    if kind == "recover-a":
        return ["s", "g"], [[r["s"], r["g"]] for r in result["sweep"]]
    if kind == "haar-test":
        cols = ["n", "mean", "stderr", "target", "abs_dev"]
        return cols, [[r[c] for c in cols] for r in result["ladder"]]
    if kind == "schoenberg":
        return ["t", "min_eig", "verdict"], [[r["t"], r["min_eig"], r["verdict"]] for r in result["grid"]]
    rows = [[k, v] for k, v in result.items() if isinstance(v, (int, float, str, bool))]
    return ["field", "value"], rows


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(report: dict) -> str:
    header, rows = _csv_rows(report)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def emit_csv(report: dict, path) -> None:
    """Write the sweep table of ``report`` to ``path``.

    Columns: ``s, g`` for recover-a, ``n, mean, stderr, target, abs_dev`` for
    haar-test, ``t, min_eig, verdict`` for schoenberg; other kinds are written
    as ``field, value`` pairs of their scalar results.
    """
    with open(path, "w", newline="") as fh:
        fh.write(render_csv(report))


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommands must not overwrite flags already given before the kind
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--scenario", default=d(None), help="scenario JSON file")
    parser.add_argument("--payload", default=d(None), help="inline payload JSON, merged over the scenario file")
    parser.add_argument("--tol", type=float, default=d(None), help=f"definiteness tolerance (default {DEFAULT_TOL})")
    parser.add_argument("--seed", type=int, default=d(None), help="random seed (default 0)")
    parser.add_argument("--out", default=d(None), help="output path (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default=d("json"))


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lkmatrix", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="kind", metavar="KIND")
    for kind, (_, operation, _) in KINDS.items():
        _add_common(sub.add_parser(kind, help=operation), suppress=True)
    return parser


def _build_scenario(args) -> dict:
    scenario: dict = {}
    if args.scenario:
        with open(args.scenario) as fh:
            scenario = json.load(fh)
        if not isinstance(scenario, dict):
            raise ScenarioError("<scenario>: must be a JSON object")
    if args.kind:
        if scenario.get("kind", args.kind) != args.kind:
            raise ScenarioError(f"kind: scenario file says {scenario['kind']!r}, command says {args.kind!r}")
        scenario["kind"] = args.kind
    if "kind" not in scenario:
        raise ScenarioError("kind: no scenario kind given")
    if args.payload:
        extra = json.loads(args.payload)
        if not isinstance(extra, dict):
            raise ScenarioError("payload: must be a JSON object")
        scenario["payload"] = {**scenario.get("payload", {}), **extra}
    if args.tol is not None:
        scenario["tol"] = args.tol
    if args.seed is not None:
        scenario["seed"] = args.seed
    return scenario


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        report = run_scenario(_build_scenario(args))
    except (ScenarioError, DomainError, NumericError) as exc:
        print(f"lkmatrix: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, json.JSONDecodeError) as exc:
        print(f"lkmatrix: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = render_csv(report) if args.format == "csv" else json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
