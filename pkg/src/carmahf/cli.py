"""Batch command-line interface.

Loads a JSON model specification, runs a computation, and emits a
machine-readable CSV or JSON document.  Exit codes: 0 success, 1 I/O error,
2 model validation error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import warnings
from datetime import datetime, timezone

import numpy as np

from . import __version__, asymptotics, core, factorization, sampling, simulate
from .core import CarmaModel, ModelError
from .factorization import FactorizationError
from .sampling import NumericalError

EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3

_MODEL_KEYS = {"a", "b", "sigma2", "label"}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def load_model(path: str) -> CarmaModel:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read model file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_IO, f"model file {path} is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise CliError(EXIT_VALIDATION, "model file must contain a JSON object")
    unknown = set(doc) - _MODEL_KEYS
    if unknown:
        raise CliError(EXIT_VALIDATION, f"unknown model keys: {sorted(unknown)}")
    missing = {"a", "b", "sigma2"} - set(doc)
    if missing:
        raise CliError(EXIT_VALIDATION, f"missing model keys: {sorted(missing)}")
    try:
        model = CarmaModel(doc["a"], doc["b"], doc["sigma2"], doc.get("label"))
        core.validate(model)
    except ModelError as exc:
        raise CliError(EXIT_VALIDATION, f"invalid model ({exc.reason}): {exc}")
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_VALIDATION, f"invalid model: {exc}")
    return model


def _model_echo(model: CarmaModel) -> dict:
    echo = {"a": list(model.a), "b": list(model.b), "sigma2": model.sigma2}
    if model.label is not None:
        echo["label"] = model.label
    return echo


def _emit(args, meta: dict, columns: list, rows: list) -> None:
    meta = dict(meta)
    meta["version"] = __version__
    if not args.no_timestamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat()
    out = sys.stdout if args.output == "-" else None
    try:
        if out is None:
            out = open(args.output, "w", newline="")
            close = True
        else:
            close = False
        if args.format == "json":
            json.dump({"meta": meta, "columns": columns, "rows": rows}, out, indent=2)
            out.write("\n")
        else:
            # CSV dialect: '.' decimal separator, headers in row 1, metadata
            # as leading comment lines.
            for key, val in meta.items():
                out.write(f"# {key}: {json.dumps(val)}\n")
            writer = csv.writer(out)
            writer.writerow(columns)
            for row in rows:
                writer.writerow(row)
        if close:
            out.close()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write output: {exc}")


def cmd_acvf(args) -> int:
    model = load_model(args.model)
    rows = []
    try:
        for lag in range(args.lags + 1):
            if args.mode == "exact":
                val = sampling.acvf_filtered(model, args.delta, lag)
            else:
                val = asymptotics.gamma_ma_asymptotic(model, args.delta, lag)
            rows.append([lag, repr(float(val)), args.mode])
    except (NumericalError, FloatingPointError) as exc:
        raise CliError(EXIT_NUMERIC, str(exc))
    meta = {"model": _model_echo(model), "delta": args.delta, "mode": args.mode}
    _emit(args, meta, ["lag", "gamma", "mode"], rows)
    return 0


def _auto_omega_max(model: CarmaModel) -> float:
    d = model.p - model.q
    g0 = core.acvf_continuous(model, 0.0)
    omega = 10.0 * (1.0 + max(abs(z) for z in core.ar_roots(model).distinct()))
    while omega < 1e6:
        tail = 4.0 * core.spectral_density_continuous(model, omega) * omega / (2 * d - 1)
        if tail < 1e-6 * g0:
            break
        omega *= 2.0
    return omega


def cmd_spectrum(args) -> int:
    model = load_model(args.model)
    if args.grid_points < 2:
        raise CliError(EXIT_VALIDATION, "--grid-points must be >= 2")
    try:
        if args.which == "continuous":
            omax = args.omega_max if args.omega_max else _auto_omega_max(model)
            grid = np.linspace(-omax, omax, args.grid_points)
            vals = core.spectral_density_continuous(model, grid)
        else:
            grid = np.linspace(-np.pi, np.pi, args.grid_points)
            if args.which == "sampled":
                vals = sampling.spectral_density_sampled(model, args.delta, grid)
            elif args.which == "filtered":
                vals = sampling.spectral_density_filtered(model, args.delta, grid)
            else:
                mask = np.abs(1.0 - np.cos(grid)) > asymptotics.OMEGA_TOL
                vals = np.full(len(grid), np.nan)
                if mask.any():
                    vals[mask] = np.atleast_1d(
                        asymptotics.f_ma_asymptotic(model, args.delta, grid[mask])
                    )
    except (NumericalError, asymptotics.OmegaTooCloseToZero) as exc:
        raise CliError(EXIT_NUMERIC, str(exc))
    rows = [[repr(float(w)), repr(float(f))] for w, f in zip(grid, vals)]
    meta = {"model": _model_echo(model), "delta": args.delta, "which": args.which}
    _emit(args, meta, ["omega", "f"], rows)
    return 0


def cmd_sampled_arma(args) -> int:
    model = load_model(args.model)
    try:
        arma = factorization.sampled_arma(model, args.delta)
        cov = sampling.acvf_filtered_sequence(model, args.delta)
        residual = factorization.reconstruction_residual(arma, cov)
    except FactorizationError as exc:
        raise CliError(EXIT_NUMERIC, f"factorization failed ({exc.reason}): {exc}")
    except NumericalError as exc:
        raise CliError(EXIT_NUMERIC, str(exc))
    rows = []
    for k, c in enumerate(arma.phi):
        rows.append(["phi", k, repr(float(c))])
    for k, c in enumerate(arma.theta, start=1):
        rows.append(["theta", k, repr(float(c))])
    rows.append(["tau2", "", repr(float(arma.tau2))])
    rows.append(["reconstruction_residual", "", repr(residual)])
    meta = {"model": _model_echo(model), "delta": args.delta}
    _emit(args, meta, ["quantity", "index", "value"], rows)
    return 0


def _parse_sweep(text: str) -> list:
    try:
        start, stop, factor = (float(x) for x in text.split(":"))
    except ValueError:
        raise CliError(EXIT_VALIDATION, "--delta-sweep must be start:stop:factor")
    if start <= 0 or stop <= 0 or not 0 < factor < 1:
        raise CliError(EXIT_VALIDATION, "sweep requires positive start/stop and factor in (0, 1)")
    deltas = []
    d = start
    while d >= stop * (1.0 - 1e-12):
        deltas.append(d)
        d *= factor
    return deltas


def _validate_one_delta(model: CarmaModel, delta: float) -> list:
    """Exact-vs-asymptotic ratio checks for one grid size."""
    rows = []
    max_re = max(abs(z.real) for z in core.ar_roots(model).distinct())
    regime = delta * max_re <= 1.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sampling.CoarseSamplingWarning)
        for lag in range(model.p):
            exact = sampling.acvf_filtered(model, delta, lag)
            asym = asymptotics.gamma_ma_asymptotic(model, delta, lag)
            ratio = exact / asym
            ok = abs(ratio - 1.0) <= 0.05
            status = "PASS" if ok else ("WARN" if not regime else "FAIL")
            rows.append([f"acvf_ratio_lag{lag}", delta, repr(float(ratio)), "|ratio-1| <= 0.05", status])
        for name, w in (("pi/4", np.pi / 4), ("pi/2", np.pi / 2), ("pi", np.pi)):
            exact = sampling.spectral_density_filtered(model, delta, w)
            asym = asymptotics.f_ma_asymptotic(model, delta, w)
            ratio = exact / asym
            ok = abs(ratio - 1.0) <= 0.05
            status = "PASS" if ok else ("WARN" if not regime else "FAIL")
            rows.append([f"spectrum_ratio_{name}", delta, repr(float(ratio)), "|ratio-1| <= 0.05", status])
    return rows


def cmd_validate(args) -> int:
    model = load_model(args.model)
    deltas = _parse_sweep(args.delta_sweep)
    rows = []
    threads = os.environ.get("CARMA_HF_THREADS")
    try:
        if threads and int(threads) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=int(threads)) as pool:
                for part in pool.map(lambda d: _validate_one_delta(model, d), deltas):
                    rows.extend(part)
        else:
            for d in deltas:
                rows.extend(_validate_one_delta(model, d))

        # Monte Carlo vs analytic filtered autocovariances at the coarsest delta.
        d0 = deltas[0]
        seeds = simulate.spawn_seeds(args.seed, args.paths)
        pooled = None
        for s in seeds:
            res = simulate.simulate_gaussian_exact(model, d0, args.length, int(s))
            emp = simulate.empirical_filtered_acvf(res, model, lags=model.p - 1)
            vals = np.array(emp.values)
            errs = np.array(emp.stderr)
            if pooled is None:
                pooled = [vals, errs**2]
            else:
                pooled[0] += vals
                pooled[1] += errs**2
        mean_vals = pooled[0] / args.paths
        mean_se = np.sqrt(pooled[1]) / args.paths
        for lag in range(model.p):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", sampling.CoarseSamplingWarning)
                exact = sampling.acvf_filtered(model, d0, lag)
            dev = abs(mean_vals[lag] - exact) / mean_se[lag]
            status = "PASS" if dev <= 4.0 else "FAIL"
            rows.append([f"mc_acvf_lag{lag}", d0, repr(float(dev)), "<= 4 SE", status])
    except (NumericalError, FactorizationError) as exc:
        raise CliError(EXIT_NUMERIC, str(exc))

    rows.sort(key=lambda r: (float(r[1]), r[0]))
    meta = {
        "model": _model_echo(model),
        "delta_sweep": deltas,
        "seed": args.seed,
        "paths": args.paths,
        "length": args.length,
    }
    _emit(args, meta, ["check", "delta", "measured", "tolerance", "status"], rows)
    return 0 if all(r[4] in ("PASS", "WARN") for r in rows) else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carmahf", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("model", help="JSON model specification file")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--output", default="-", help="output file, '-' for stdout")
        sp.add_argument("--no-timestamp", action="store_true")

    sp = sub.add_parser("acvf", help="filtered-sequence autocovariances")
    common(sp)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--lags", type=int, default=0, help="maximum lag")
    sp.add_argument("--mode", choices=["exact", "asymptotic"], default="exact")
    sp.set_defaults(func=cmd_acvf)

    sp = sub.add_parser("spectrum", help="spectral densities on a uniform grid")
    common(sp)
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--which", choices=["continuous", "sampled", "filtered", "asymptotic"], required=True)
    sp.add_argument("--grid-points", type=int, default=1001)
    sp.add_argument("--omega-max", type=float, default=0.0, help="window for the continuous spectrum (0 = auto)")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("sampled-arma", help="ARMA representation of the sampled process")
    common(sp)
    sp.add_argument("--delta", type=float, required=True)
    sp.set_defaults(func=cmd_sampled_arma)

    sp = sub.add_parser("validate", help="exact/asymptotic/Monte Carlo cross-checks")
    common(sp)
    sp.add_argument("--delta-sweep", default="0.01:0.001:0.5", help="start:stop:factor")
    sp.add_argument("--seed", type=int, default=20260824)
    sp.add_argument("--paths", type=int, default=1)
    sp.add_argument("--length", type=int, default=100000)
    sp.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"carmahf: {exc}", file=sys.stderr)
        return exc.code
    except ModelError as exc:
        print(f"carmahf: invalid model ({exc.reason}): {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
