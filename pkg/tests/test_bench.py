"""Benchmark harness: gate, timing bookkeeping, and configuration."""

import numpy as np
import pytest

import gbscm.bench as bench_mod
from gbscm import (
    BenchConfig,
    EquivalenceGateError,
    InvalidParameterError,
    bench_scenario,
    run_bench,
    spatial_memory_bytes,
    verify_equivalence_gate,
)

TINY = BenchConfig(
    tx_antenna_sweep=(2,),
    freq_point_sweep=(3,),
    rx_antennas=2,
    links=1,
    subpaths=4,
    repetitions=3,
    warmup=0,
    seed=1,
)


def test_gate_passes_on_the_real_engines():
    gate = verify_equivalence_gate(TINY)
    assert gate.passed
    assert gate.max_relative_error <= 1e-12
    assert gate.cells_checked == 6  # five scalar spot checks plus one polarized


def test_gate_catches_scalar_faults(monkeypatch):
    real = bench_mod.channel_optimized

    def corrupted(sp, f, t):
        return real(sp, f, t) * (1.0 + 1e-6)

    monkeypatch.setattr(bench_mod, "channel_optimized", corrupted)
    gate = verify_equivalence_gate(TINY)
    assert not gate.passed
    assert gate.max_relative_error > 1e-12
    with pytest.raises(EquivalenceGateError):
        run_bench(TINY)


def test_gate_catches_polarized_faults(monkeypatch):
    real = bench_mod.polarized_channel

    def corrupted(psp, f, t):
        out = real(psp, f, t).copy()
        out[0, 0] += 1e-5 * abs(out[0, 0])
        return out

    monkeypatch.setattr(bench_mod, "polarized_channel", corrupted)
    gate = verify_equivalence_gate(TINY)
    assert not gate.passed


def test_report_smoke():
    report = run_bench(TINY)
    assert len(report.cells) == 1
    cell = report.cells[0]
    assert cell.tx_antennas == 2
    assert cell.freq_points == 3
    assert cell.baseline_seconds > 0.0
    assert cell.optimized_seconds > 0.0
    assert abs(cell.speedup - cell.baseline_seconds / cell.optimized_seconds) <= 1e-12
    assert cell.memory_bytes == spatial_memory_bytes(1, 4, 2, 2, 8)
    assert cell.baseline_inner_iters >= 1
    assert cell.optimized_inner_iters >= 1
    assert report.gate.passed
    assert isinstance(report.environment, dict) and report.environment


def test_cells_cover_the_sweep_in_order():
    cfg = BenchConfig(
        tx_antenna_sweep=(2, 3),
        freq_point_sweep=(1, 2),
        rx_antennas=1,
        links=1,
        subpaths=2,
        repetitions=3,
        warmup=0,
        seed=0,
    )
    report = run_bench(cfg)
    assert [(c.tx_antennas, c.freq_points) for c in report.cells] == [
        (2, 1),
        (2, 2),
        (3, 1),
        (3, 2),
    ]


def test_bench_scenario_mapping():
    cfg = BenchConfig(subpaths=240, links=10, seed=5)
    scen = bench_scenario(cfg)
    assert scen.n_subpaths == 240
    assert scen.cluster_count == 24
    assert scen.link_count == 10
    assert scen.rng_seed == 5
    assert scen.rx_speed_range == (1.0, 1.0)
    # a count with no factor of ten falls back to single-subpath clusters
    odd = bench_scenario(BenchConfig(subpaths=7))
    assert odd.cluster_count == 7
    assert odd.subpaths_per_cluster == 1


def test_config_defaults_match_the_reference_sweep():
    cfg = BenchConfig()
    assert cfg.tx_antenna_sweep == (8, 16, 32, 64, 128, 256)
    assert cfg.freq_point_sweep == (12, 120, 1200)
    assert cfg.rx_antennas == 4
    assert cfg.links == 10
    assert cfg.subpaths == 240
    assert cfg.repetitions == 3
    assert cfg.f0 == 3.0e9


def test_config_validation():
    with pytest.raises(InvalidParameterError):
        BenchConfig(repetitions=2)  # one preempted round must not decide a cell
    with pytest.raises(InvalidParameterError):
        BenchConfig(warmup=-1)
    with pytest.raises(InvalidParameterError):
        BenchConfig(tx_antenna_sweep=())
    with pytest.raises(InvalidParameterError):
        BenchConfig(tx_antenna_sweep=(0,))
    with pytest.raises(InvalidParameterError):
        BenchConfig(freq_point_sweep=(12, -1))
    with pytest.raises(InvalidParameterError):
        BenchConfig(links=0)
    with pytest.raises(InvalidParameterError):
        BenchConfig(subpaths=0)
    with pytest.raises(InvalidParameterError):
        BenchConfig(rx_antennas=0)
    with pytest.raises(InvalidParameterError):
        BenchConfig(f0=-1.0)


def test_calibration_scales_inner_iterations_for_fast_callables():
    inner = bench_mod._calibrate_inner(lambda: None, warmup=1)
    assert inner > 1  # a no-op cannot fill a measurable batch alone


def test_calibration_keeps_slow_callables_unscaled():
    import time

    inner = bench_mod._calibrate_inner(lambda: time.sleep(0.06), warmup=0)
    assert inner == 1
    assert bench_mod._time_batch(lambda: time.sleep(0.06), inner) >= 0.05


def test_environment_metadata():
    env = bench_mod._environment()
    assert "python" in env
    assert "numpy" in env
