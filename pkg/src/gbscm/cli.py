"""Command-line front end: config in, CSV artifacts out.

Four subcommands map one-to-one onto the library's entry points:

* ``simulate``   -- channel matrices over the configured grid -> channel.csv
* ``bench``      -- baseline-vs-optimized timing sweep -> bench.csv
* ``covariance`` -- theoretical / time-sample / ensemble-sample covariance
  matrices for one link -> six CSVs (both sides, three provenances)
* ``convergence``-- time-vs-ensemble estimator error curves -> convergence.csv

Every run writes ``manifest.yaml`` (config echo, seed, package version,
wall time, output list) next to the CSVs.  All floats are emitted with 17
significant digits, runs are deterministic under (config, seed), and BLAS
threading is pinned to 1 inside the run so outputs are byte-identical
across machines' thread counts.  Exit codes: 0 success, 2 config error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys
import time
from pathlib import Path
from typing import List, Optional

import numpy as np
import yaml
from threadpoolctl import threadpool_limits

from . import __version__
from .bench import run_bench
from .config import (
    RunConfig,
    config_to_dict,
    parse_config,
    parse_config_file,
    print_config,
)
from .covariance import (
    convergence_experiment,
    sample_covariance_ensemble,
    sample_covariance_time,
    theoretical_covariance,
)
from .engine import channel_grid, precompute_spatial
from .errors import ConfigError, EquivalenceGateError, InvalidParameterError
from .polarized import (
    COMPONENT_ORDER,
    polarized_channel_grid,
    polarized_component_grids,
    precompute_polarized,
)
from .scenario import generate_links, generate_polarized_links


def _fmt(x: float) -> str:
    """17-significant-digit scientific notation: exact float round-trip."""
    return f"{x:.16e}"


def _open_csv(path: Path):
    fh = open(path, "w", newline="", encoding="utf-8")
    return fh, csv.writer(fh, lineterminator="\n")


def _write_matrix_csv(path: Path, matrix: np.ndarray):
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(["row", "col", "real", "imag"])
        for r in range(matrix.shape[0]):
            for c in range(matrix.shape[1]):
                v = matrix[r, c]
                writer.writerow([r, c, _fmt(v.real), _fmt(v.imag)])


def _run_simulate(cfg: RunConfig, out: Path) -> dict:
    tx = cfg.tx_array.build(cfg.f0)
    rx = cfg.rx_array.build(cfg.f0)
    freqs = cfg.grid.resolve_freqs(cfg.f0)
    times = cfg.grid.resolve_times()
    path = out / "channel.csv"
    fh, writer = _open_csv(path)
    with fh:
        if cfg.engine == "scalar":
            writer.writerow(["link_id", "t_index", "f_index", "rx", "tx", "real", "imag"])
            for link_id, link in enumerate(generate_links(cfg.scenario)):
                grid = channel_grid(precompute_spatial(link, tx, rx), freqs, times)
                for i in range(times.size):
                    for k in range(freqs.size):
                        h = grid.values[i, k]
                        for r in range(h.shape[0]):
                            for s in range(h.shape[1]):
                                writer.writerow(
                                    [link_id, i, k, r, s, _fmt(h[r, s].real), _fmt(h[r, s].imag)]
                                )
        else:
            writer.writerow(
                ["link_id", "t_index", "f_index", "rx", "tx", "pol_term", "real", "imag"]
            )
            for link_id, plink in enumerate(generate_polarized_links(cfg.scenario)):
                psp = precompute_polarized(plink, tx, rx)
                total = polarized_channel_grid(psp, freqs, times)
                comps = (
                    polarized_component_grids(psp, freqs, times)
                    if cfg.emit_components
                    else {}
                )
                for i in range(times.size):
                    for k in range(freqs.size):
                        h = total.values[i, k]
                        for r in range(h.shape[0]):
                            for s in range(h.shape[1]):
                                writer.writerow(
                                    [link_id, i, k, r, s, "sum",
                                     _fmt(h[r, s].real), _fmt(h[r, s].imag)]
                                )
                                for key in COMPONENT_ORDER if cfg.emit_components else ():
                                    v = comps[key].values[i, k, r, s]
                                    writer.writerow(
                                        [link_id, i, k, r, s, key,
                                         _fmt(v.real), _fmt(v.imag)]
                                    )
    return {"outputs": [path.name]}


def _desk_scale(cfg: RunConfig) -> RunConfig:
    """Without --full, cap the sweep at 64 antennas x 120 frequencies."""
    tx = tuple(v for v in cfg.bench.tx_antenna_sweep if v <= 64)
    fr = tuple(v for v in cfg.bench.freq_point_sweep if v <= 120)
    if not tx:
        raise ConfigError(
            "bench.tx_antenna_sweep",
            "no entries <= 64 for the desk-scale run; pass --full",
        )
    if not fr:
        raise ConfigError(
            "bench.freq_point_sweep",
            "no entries <= 120 for the desk-scale run; pass --full",
        )
    bench = dataclasses.replace(cfg.bench, tx_antenna_sweep=tx, freq_point_sweep=fr)
    return dataclasses.replace(cfg, bench=bench)


def _run_bench(cfg: RunConfig, out: Path, full: bool) -> dict:
    if not full:
        cfg = _desk_scale(cfg)
    report = run_bench(cfg.bench)
    path = out / "bench.csv"
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(
            ["tx_antennas", "freq_points", "baseline_s", "optimized_s", "speedup", "memory_bytes"]
        )
        for cell in report.cells:
            writer.writerow(
                [
                    cell.tx_antennas,
                    cell.freq_points,
                    _fmt(cell.baseline_seconds),
                    _fmt(cell.optimized_seconds),
                    _fmt(cell.speedup),
                    cell.memory_bytes,
                ]
            )
    return {
        "outputs": [path.name],
        "environment": report.environment,
        "gate": {
            "max_relative_error": float(report.gate.max_relative_error),
            "cells_checked": report.gate.cells_checked,
        },
        "inner_iterations": [
            {
                "tx_antennas": c.tx_antennas,
                "freq_points": c.freq_points,
                "baseline": c.baseline_inner_iters,
                "optimized": c.optimized_inner_iters,
            }
            for c in report.cells
        ],
    }


def _require_scalar_engine(cfg: RunConfig, subcommand: str):
    if cfg.engine != "scalar":
        raise ConfigError(
            "engine", f"the {subcommand} subcommand runs on the scalar engine"
        )


def _run_covariance(cfg: RunConfig, out: Path) -> dict:
    _require_scalar_engine(cfg, "covariance")
    tx = cfg.tx_array.build(cfg.f0)
    rx = cfg.rx_array.build(cfg.f0)
    link = generate_links(cfg.scenario)[cfg.covariance.link_index]
    sp = precompute_spatial(link, tx, rx)
    f = float(cfg.grid.resolve_freqs(cfg.f0)[0])
    t = float(cfg.grid.resolve_times()[0])
    spec = cfg.covariance
    sample_times = np.arange(spec.time_samples) * spec.sample_interval
    outputs: List[str] = []
    errors = {}
    for side in ("receive", "transmit"):
        theo = theoretical_covariance(sp, side, spec.nu_tolerance)
        tim = sample_covariance_time(sp, f, sample_times, side, spec.nu_tolerance)
        ens = sample_covariance_ensemble(
            link, tx, rx, f, t, spec.n_draws, cfg.seed, side, spec.nu_tolerance
        )
        for name, report in (
            (f"theoretical_{side}.csv", theo),
            (f"time_sample_{side}.csv", tim),
            (f"ensemble_sample_{side}.csv", ens),
        ):
            _write_matrix_csv(out / name, report.matrix)
            outputs.append(name)
        errors[side] = {
            "time_sample": float(tim.frobenius_error_vs_theoretical),
            "ensemble_sample": float(ens.frobenius_error_vs_theoretical),
        }
    return {"outputs": outputs, "frobenius_errors_vs_theoretical": errors}


def _run_convergence(cfg: RunConfig, out: Path) -> dict:
    _require_scalar_engine(cfg, "convergence")
    tx = cfg.tx_array.build(cfg.f0)
    rx = cfg.rx_array.build(cfg.f0)
    rows = convergence_experiment(
        cfg.scenario,
        cfg.convergence.horizons,
        cfg.convergence.n_draws_list,
        tx=tx,
        rx=rx,
        sample_interval=cfg.convergence.sample_interval,
        frequency=float(cfg.grid.resolve_freqs(cfg.f0)[0]),
        t=float(cfg.grid.resolve_times()[0]),
        seed=cfg.seed,
    )
    path = out / "convergence.csv"
    fh, writer = _open_csv(path)
    with fh:
        writer.writerow(["estimator", "budget", "frobenius_error"])
        for row in rows:
            writer.writerow([row.estimator, row.budget, _fmt(row.frobenius_error)])
    return {"outputs": [path.name]}


def _origin_module(exc: BaseException) -> str:
    """Deepest package module on the exception's traceback."""
    origin = "gbscm"
    tb = exc.__traceback__
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if isinstance(name, str) and name.startswith("gbscm"):
            origin = name
        tb = tb.tb_next
    return origin


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbscm",
        description="Geometry-based stochastic MIMO channel simulator.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "simulate": "generate channel matrices over the configured grid",
        "bench": "time the baseline engine against the factorized engine",
        "covariance": "theoretical and sampled spatial covariance for one link",
        "convergence": "time-average vs ensemble-average convergence curves",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", metavar="PATH", help="YAML config file")
        p.add_argument("--out", metavar="DIR", help="output directory")
        p.add_argument(
            "--seed", type=int, metavar="U64", help="override the config seed"
        )
        p.add_argument(
            "--print-config",
            action="store_true",
            help="echo the fully materialized config and exit",
        )
        if name == "bench":
            p.add_argument(
                "--full",
                action="store_true",
                help="run the full sweep (default caps at 64 antennas x 120 frequencies)",
            )
    return parser


_RUNNERS = {
    "simulate": lambda cfg, out, args: _run_simulate(cfg, out),
    "bench": lambda cfg, out, args: _run_bench(cfg, out, args.full),
    "covariance": lambda cfg, out, args: _run_covariance(cfg, out),
    "convergence": lambda cfg, out, args: _run_convergence(cfg, out),
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config_file(args.config) if args.config else parse_config(None)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed", f"must be >= 0, got {args.seed}")
            cfg = cfg.with_seed(args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.print_config:
        sys.stdout.write(print_config(cfg))
        return 0
    out = Path(args.out or cfg.out_dir or Path("gbscm-out") / args.subcommand)
    started = time.perf_counter()
    try:
        out.mkdir(parents=True, exist_ok=True)
        with threadpool_limits(limits=1):
            extras = _RUNNERS[args.subcommand](cfg, out, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParameterError, EquivalenceGateError, OSError) as exc:
        print(f"error [{_origin_module(exc)}]: {exc}", file=sys.stderr)
        return 3
    manifest = {
        "command": args.subcommand,
        "package_version": __version__,
        "seed": cfg.seed,
        "wall_time_seconds": time.perf_counter() - started,
        "outputs": extras.pop("outputs"),
        "config": config_to_dict(cfg),
    }
    manifest.update(extras)
    with open(out / "manifest.yaml", "w", encoding="utf-8") as fh:
        yaml.safe_dump(manifest, fh, sort_keys=False)
    return 0
