"""Baseline-vs-factorized benchmark harness.

Times the direct-sum engine against precompute-plus-grid evaluation over a
sweep of transmit array sizes and frequency-grid densities, on a fixed
multi-link drop.  Before any timing, a correctness gate cross-checks the
two engines (and the dual-polarized pair) on random cells; a failed gate
aborts the run, because timings of disagreeing implementations are
meaningless.

All timed work runs under a single BLAS thread
(``threadpoolctl.threadpool_limits(1)``) so speedups measure the
algorithmic change, not thread scaling.  Wall time comes from
``time.perf_counter``, keeping the fastest of the repetitions: scheduler
preemption and other-tenant noise only ever add time, so the minimum is
the stable estimate of the true cost on a busy host.  Cells too fast for
the timer get an auto-scaled inner iteration count, which is recorded in
the report.  Repetitions are interleaved round-robin across the sweep so
host-load drift lands on every cell alike rather than biasing whichever
cell happened to be under the timer.
"""

from __future__ import annotations

import platform
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np
from threadpoolctl import threadpool_limits

from .antenna import IsotropicPattern, PolarizedPattern, make_ula
from .engine import (
    channel_baseline,
    channel_grid,
    channel_optimized,
    precompute_spatial,
    spatial_memory_bytes,
)
from .errors import EquivalenceGateError, InvalidParameterError
from .polarized import (
    polarized_channel,
    polarized_channel_baseline,
    precompute_polarized,
)
from .scenario import ScenarioConfig, generate_links, generate_polarized_links

#: Subcarrier spacing used to lay out benchmark frequency grids.
GRID_FREQ_STEP = 15e3

#: Target duration of one timed batch; cells faster than this get their
#: inner iteration count scaled up until a batch is measurable.
_MIN_BATCH_SECONDS = 0.05


@dataclass(frozen=True)
class BenchConfig:
    """Sweep definition for the benchmark.

    Defaults reproduce the full reference experiment: a 10-link drop with
    240 subpaths per link, 4 receive antennas, transmit arrays swept over
    ``tx_antenna_sweep``, and a single-time grid of ``freq_point_sweep``
    frequencies.  At least 3 repetitions are required so one preempted
    round cannot decide a cell's timing.
    """

    tx_antenna_sweep: Tuple[int, ...] = (8, 16, 32, 64, 128, 256)
    freq_point_sweep: Tuple[int, ...] = (12, 120, 1200)
    rx_antennas: int = 4
    links: int = 10
    subpaths: int = 240
    repetitions: int = 3
    warmup: int = 1
    f0: float = 3.0e9
    seed: int = 0

    def __post_init__(self):
        for name in ("tx_antenna_sweep", "freq_point_sweep"):
            values = tuple(int(v) for v in getattr(self, name))
            if not values or any(v < 1 for v in values):
                raise InvalidParameterError(
                    f"{name} must be a non-empty list of integers >= 1"
                )
            object.__setattr__(self, name, values)
        for name, minimum in (
            ("rx_antennas", 1),
            ("links", 1),
            ("subpaths", 1),
            ("repetitions", 3),
            ("warmup", 0),
        ):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
                raise InvalidParameterError(
                    f"{name} must be an integer >= {minimum}, got {v!r}"
                )
        if self.f0 <= 0.0:
            raise InvalidParameterError(
                f"carrier frequency must be positive, got {self.f0}"
            )
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise InvalidParameterError(
                f"seed must be a non-negative integer, got {self.seed!r}"
            )


@dataclass(frozen=True)
class GateResult:
    """Outcome of the pre-timing correctness gate."""

    passed: bool
    max_relative_error: float
    cells_checked: int


@dataclass(frozen=True)
class BenchCell:
    """Timings for one (tx antennas, frequency points) sweep cell.

    Seconds are the fastest per-repetition batch averages and cover one
    full pass over all links and all grid points; ``memory_bytes`` is the
    spatial-matrix footprint of the drop at this cell's array sizes.
    """

    tx_antennas: int
    freq_points: int
    baseline_seconds: float
    optimized_seconds: float
    speedup: float
    memory_bytes: int
    baseline_inner_iters: int
    optimized_inner_iters: int


@dataclass(frozen=True)
class BenchReport:
    cells: Tuple[BenchCell, ...]
    environment: Dict[str, str]
    gate: GateResult


def bench_scenario(cfg: BenchConfig) -> ScenarioConfig:
    """The drop used for timing: pedestrian receive motion, fixed seed.

    Subpath counts divisible by 10 are laid out as ``subpaths/10`` clusters
    of 10; other counts become single-subpath clusters.
    """
    if cfg.subpaths % 10 == 0 and cfg.subpaths >= 10:
        clusters, per = cfg.subpaths // 10, 10
    else:
        clusters, per = cfg.subpaths, 1
    return ScenarioConfig(
        f0=cfg.f0,
        link_count=cfg.links,
        cluster_count=clusters,
        subpaths_per_cluster=per,
        rx_speed_range=(1.0, 1.0),
        rng_seed=cfg.seed,
    )


def _gate_polarized_config(cfg: BenchConfig) -> ScenarioConfig:
    return ScenarioConfig(
        f0=cfg.f0,
        link_count=1,
        cluster_count=6,
        subpaths_per_cluster=5,
        rx_speed_range=(1.0, 1.0),
        rng_seed=cfg.seed,
    )


def verify_equivalence_gate(cfg: BenchConfig, n_cells: int = 5) -> GateResult:
    """Cross-check the two engines on random cells before timing anything.

    Compares :func:`channel_baseline` against
    :func:`channel_optimized` on ``n_cells`` randomly chosen (link, array
    size, frequency, time) combinations, plus the dual-polarized pair on
    one small cell.  Passes when the worst relative error (normalized by
    the largest entry magnitude) stays within 1e-12.
    """
    if n_cells < 1:
        raise InvalidParameterError(f"n_cells must be >= 1, got {n_cells}")
    # Dedicated substream so gate sampling never perturbs the drop itself.
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 71]))
    links = generate_links(bench_scenario(cfg))
    rx = make_ula(cfg.rx_antennas, 0.5, cfg.f0)
    worst = 0.0
    for _ in range(n_cells):
        tx = make_ula(int(rng.choice(cfg.tx_antenna_sweep)), 0.5, cfg.f0)
        link = links[int(rng.integers(len(links)))]
        f = cfg.f0 + float(rng.uniform(-10e6, 10e6))
        t = float(rng.uniform(0.0, 1.0))
        reference = channel_baseline(link, tx, rx, f, t)
        fast = channel_optimized(precompute_spatial(link, tx, rx), f, t)
        worst = max(
            worst,
            float(np.max(np.abs(fast - reference)) / np.max(np.abs(reference))),
        )
    pol_pattern = PolarizedPattern(IsotropicPattern(), IsotropicPattern())
    pol_tx = make_ula(4, 0.5, cfg.f0, pattern=pol_pattern)
    pol_rx = make_ula(2, 0.5, cfg.f0, pattern=pol_pattern)
    plink = generate_polarized_links(_gate_polarized_config(cfg))[0]
    f = cfg.f0 + float(rng.uniform(-10e6, 10e6))
    t = float(rng.uniform(0.0, 1.0))
    reference = polarized_channel_baseline(plink, pol_tx, pol_rx, f, t)
    fast = polarized_channel(precompute_polarized(plink, pol_tx, pol_rx), f, t)
    worst = max(
        worst, float(np.max(np.abs(fast - reference)) / np.max(np.abs(reference)))
    )
    return GateResult(
        passed=bool(worst <= 1e-12),
        max_relative_error=worst,
        cells_checked=n_cells + 1,
    )


def _time_batch(fn: Callable[[], None], inner: int) -> float:
    """Wall seconds for one batch of ``inner`` back-to-back calls."""
    start = time.perf_counter()
    for _ in range(inner):
        fn()
    return time.perf_counter() - start


def _calibrate_inner(fn: Callable[[], None], warmup: int) -> int:
    """Inner iteration count whose batch fills the measurable target.

    Runs ``warmup`` untimed calls, then grows the batch size until a
    single batch takes at least the minimum measurable duration.
    """
    for _ in range(warmup):
        fn()
    inner = 1
    while True:
        elapsed = _time_batch(fn, inner)
        if elapsed >= _MIN_BATCH_SECONDS:
            return inner
        scale = _MIN_BATCH_SECONDS / max(elapsed, 1e-9)
        inner = max(inner + 1, int(np.ceil(inner * scale * 1.2)))


def _cell_callables(
    links, tx: ArrayDescriptor, rx: ArrayDescriptor, freqs: np.ndarray, times: np.ndarray
) -> Tuple[Callable[[], None], Callable[[], None]]:
    """Timed bodies for one sweep cell, bound to that cell's arrays."""

    def run_baseline():
        for link in links:
            for f in freqs:
                channel_baseline(link, tx, rx, float(f), 0.0)

    def run_optimized():
        for link in links:
            channel_grid(precompute_spatial(link, tx, rx), freqs, times)

    return run_baseline, run_optimized


@dataclass
class _PreparedCell:
    """One sweep cell between calibration and the interleaved timing rounds."""

    n_tx: int
    n_freq: int
    run_baseline: Callable[[], None]
    run_optimized: Callable[[], None]
    baseline_inner: int
    optimized_inner: int
    baseline_samples: List[float] = field(default_factory=list)
    optimized_samples: List[float] = field(default_factory=list)


def _environment() -> Dict[str, str]:
    cpu = platform.processor() or platform.machine()
    try:
        with open("/proc/cpuinfo") as fh:
            for line in fh:
                if line.lower().startswith("model name"):
                    cpu = line.split(":", 1)[1].strip()
                    break
    except OSError:
        pass
    return {
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "platform": platform.platform(),
        "cpu": cpu,
        "blas_threads": "1 (pinned)",
    }


def run_bench(cfg: BenchConfig) -> BenchReport:
    """Gate, then time every sweep cell single-threaded.

    Each cell times one full pass over the drop: the baseline engine calls
    :func:`channel_baseline` per (link, frequency); the optimized engine
    runs :func:`precompute_spatial` plus :func:`channel_grid` per link, so
    its precompute cost is inside the measurement.  After a calibration
    pass fixes per-cell inner iteration counts, each repetition round
    times one baseline and one optimized batch for every cell before the
    next round starts; cells within a round are seconds apart instead of
    minutes, so cross-cell comparisons (the speedup ordering most of all)
    see the same host conditions.  Raises
    :class:`~gbscm.errors.EquivalenceGateError` if the gate fails.
    """
    gate = verify_equivalence_gate(cfg)
    if not gate.passed:
        raise EquivalenceGateError(
            f"engines disagree (max relative error {gate.max_relative_error:.3e}); "
            "refusing to time"
        )
    links = generate_links(bench_scenario(cfg))
    rx = make_ula(cfg.rx_antennas, 0.5, cfg.f0)
    times = np.array([0.0])
    with threadpool_limits(limits=1):
        prepared = []
        for n_tx in cfg.tx_antenna_sweep:
            tx = make_ula(n_tx, 0.5, cfg.f0)
            for n_freq in cfg.freq_point_sweep:
                freqs = cfg.f0 + GRID_FREQ_STEP * (
                    np.arange(n_freq) - (n_freq - 1) / 2.0
                )
                run_baseline, run_optimized = _cell_callables(
                    links, tx, rx, freqs, times
                )
                prepared.append(
                    _PreparedCell(
                        n_tx=n_tx,
                        n_freq=n_freq,
                        run_baseline=run_baseline,
                        run_optimized=run_optimized,
                        baseline_inner=_calibrate_inner(run_baseline, cfg.warmup),
                        optimized_inner=_calibrate_inner(run_optimized, cfg.warmup),
                    )
                )
        for _ in range(cfg.repetitions):
            for cell in prepared:
                cell.baseline_samples.append(
                    _time_batch(cell.run_baseline, cell.baseline_inner)
                    / cell.baseline_inner
                )
                cell.optimized_samples.append(
                    _time_batch(cell.run_optimized, cell.optimized_inner)
                    / cell.optimized_inner
                )
    cells = []
    for cell in prepared:
        baseline_s = float(min(cell.baseline_samples))
        optimized_s = float(min(cell.optimized_samples))
        cells.append(
            BenchCell(
                tx_antennas=cell.n_tx,
                freq_points=cell.n_freq,
                baseline_seconds=baseline_s,
                optimized_seconds=optimized_s,
                speedup=baseline_s / optimized_s,
                memory_bytes=spatial_memory_bytes(
                    cfg.links, cfg.subpaths, cfg.rx_antennas, cell.n_tx
                ),
                baseline_inner_iters=cell.baseline_inner,
                optimized_inner_iters=cell.optimized_inner,
            )
        )
    return BenchReport(cells=tuple(cells), environment=_environment(), gate=gate)
