"""Scalar channel engines against the hand-rolled reference implementation."""

import cmath
import math

import numpy as np
import pytest

from gbscm import (
    Angles,
    ArrayDescriptor,
    ChannelGrid,
    CosinePowerPattern,
    InvalidParameterError,
    IsotropicPattern,
    PolarizedPattern,
    SectorPattern,
    Subpath,
    LinkMultipath,
    channel_baseline,
    channel_grid,
    channel_optimized,
    make_ula,
    precompute_spatial,
    spatial_memory_bytes,
    wavenumber,
)

import reference_impl
from conftest import build_link

F0 = 3.0e9


def _pair(n_tx=3, n_rx=2, tx_pattern=None, rx_pattern=None):
    return (
        make_ula(n_tx, 0.5, F0, pattern=tx_pattern),
        make_ula(n_rx, 0.5, F0, pattern=rx_pattern),
    )


def test_baseline_matches_scalar_reference():
    link = build_link(np.random.default_rng(7), 12, rx_speed=1.3, tx_speed=0.4)
    tx, rx = _pair()
    for f, t in [(F0, 0.0), (F0 + 5e6, 0.37), (F0 - 2e6, 1.9)]:
        got = channel_baseline(link, tx, rx, f, t)
        want = reference_impl.scalar_channel(link, tx, rx, f, t)
        assert reference_impl.max_relative_error(got, want) <= 1e-12


def test_optimized_matches_scalar_reference():
    link = build_link(np.random.default_rng(8), 15, rx_speed=0.9)
    tx, rx = _pair()
    sp = precompute_spatial(link, tx, rx)
    for f, t in [(F0, 0.0), (F0 + 1e7, 0.11), (F0 - 4e6, 2.3)]:
        got = channel_optimized(sp, f, t)
        want = reference_impl.scalar_channel(link, tx, rx, f, t)
        assert reference_impl.max_relative_error(got, want) <= 1e-12


def test_patterned_arrays_match_scalar_reference():
    link = build_link(np.random.default_rng(9), 10)
    tx, rx = _pair(
        tx_pattern=CosinePowerPattern(exponent=1.6),
        rx_pattern=SectorPattern(az_beamwidth_deg=80.0, el_beamwidth_deg=50.0),
    )
    f, t = F0 + 3e6, 0.21
    want = reference_impl.scalar_channel(link, tx, rx, f, t)
    assert reference_impl.max_relative_error(channel_baseline(link, tx, rx, f, t), want) <= 1e-12
    sp = precompute_spatial(link, tx, rx)
    assert reference_impl.max_relative_error(channel_optimized(sp, f, t), want) <= 1e-12


def test_single_subpath_closed_form():
    # one subpath, colocated single elements: the sum collapses to one phasor
    sub = Subpath(power=0.7, delay=3.1e-8, phase=1.234, arrival=Angles(1.1, 0.4),
                  departure=Angles(2.0, -0.9))
    v_rx = np.array([0.8, -0.2, 0.1])
    link = LinkMultipath(f0=F0, subpaths=(sub,), v_rx=v_rx)
    element = ArrayDescriptor(positions=np.zeros((1, 3)))
    f, t = F0 + 1e6, 0.5
    nu = link.doppler_coefficients[0]
    k0 = wavenumber(F0)
    want = math.sqrt(sub.power) * cmath.exp(
        1j * (sub.phase + k0 * nu * t - 2.0 * math.pi * f * sub.delay)
    )
    got = channel_baseline(link, element, element, f, t)
    assert abs(got[0, 0] - want) <= 1e-15 * abs(want)
    # the factorized path multiplies separate phasors instead of summing
    # phases inside one exponential, so it only agrees to ~|phase| ulps
    sp = precompute_spatial(link, element, element)
    assert abs(channel_optimized(sp, f, t)[0, 0] - want) <= 1e-12 * abs(want)


def test_baseline_and_optimized_agree_on_larger_links():
    rng = np.random.default_rng(10)
    link = build_link(rng, 240)
    tx, rx = _pair(n_tx=64, n_rx=4)
    sp = precompute_spatial(link, tx, rx)
    for f, t in [(F0, 0.0), (F0 + 8e6, 0.77)]:
        base = channel_baseline(link, tx, rx, f, t)
        fast = channel_optimized(sp, f, t)
        err = np.max(np.abs(fast - base)) / np.max(np.abs(base))
        assert err <= 1e-12


def test_zero_velocity_channel_is_time_invariant():
    link = build_link(np.random.default_rng(11), 20, rx_speed=0.0, tx_speed=0.0)
    tx, rx = _pair()
    f = F0 + 2e6
    assert np.array_equal(
        channel_baseline(link, tx, rx, f, 0.0), channel_baseline(link, tx, rx, f, 123.456)
    )
    sp = precompute_spatial(link, tx, rx)
    assert np.array_equal(channel_optimized(sp, f, 0.0), channel_optimized(sp, f, 987.0))


def test_grid_matches_pointwise_bit_for_bit():
    link = build_link(np.random.default_rng(12), 30, rx_speed=1.1)
    tx, rx = _pair(n_tx=5, n_rx=3)
    sp = precompute_spatial(link, tx, rx)
    times = np.array([0.0, 1e-3, 2e-3])
    freqs = F0 + 15e3 * np.arange(4)
    grid = channel_grid(sp, freqs, times)
    assert grid.values.shape == (3, 4, 3, 5)
    for i, t in enumerate(times):
        for k, f in enumerate(freqs):
            assert np.array_equal(grid.values[i, k], channel_optimized(sp, f, t))


def test_grid_axes_are_recorded():
    link = build_link(np.random.default_rng(13), 4)
    tx, rx = _pair()
    sp = precompute_spatial(link, tx, rx)
    grid = channel_grid(sp, [F0], [0.0, 1.0])
    assert np.array_equal(grid.freqs, [F0])
    assert np.array_equal(grid.times, [0.0, 1.0])
    with pytest.raises(ValueError):
        grid.values[0, 0, 0, 0] = 0.0


def test_grid_validation():
    link = build_link(np.random.default_rng(14), 4)
    tx, rx = _pair()
    sp = precompute_spatial(link, tx, rx)
    with pytest.raises(InvalidParameterError):
        channel_grid(sp, [], [0.0])
    with pytest.raises(InvalidParameterError):
        channel_grid(sp, [F0], [])


def test_precompute_shapes_and_readonly():
    link = build_link(np.random.default_rng(15), 17)
    tx, rx = _pair(n_tx=6, n_rx=4)
    sp = precompute_spatial(link, tx, rx)
    assert sp.s_matrix.shape == (6, 17)
    assert sp.r_matrix.shape == (4, 17)
    assert sp.n_tx == 6 and sp.n_rx == 4 and sp.n_subpaths == 17
    assert np.max(np.abs(np.abs(sp.s_matrix) - 1.0)) <= 1e-14  # isotropic: pure phasors
    assert np.array_equal(sp.amplitudes, np.sqrt(link.powers))
    with pytest.raises(ValueError):
        sp.s_matrix[0, 0] = 0.0
    with pytest.raises(ValueError):
        sp.doppler[0] = 0.0


def test_carrier_mismatch_is_rejected():
    link = build_link(np.random.default_rng(16), 5)
    wrong = make_ula(4, 0.5, 2.0e9)
    ok = make_ula(2, 0.5, F0)
    with pytest.raises(InvalidParameterError):
        channel_baseline(link, wrong, ok, F0, 0.0)
    with pytest.raises(InvalidParameterError):
        precompute_spatial(link, ok, wrong)
    # hand-built arrays carry no design carrier and opt out of the check
    free = ArrayDescriptor(positions=np.zeros((2, 3)))
    channel_baseline(link, free, ok, F0, 0.0)


def test_polarized_pattern_is_rejected_by_scalar_engine():
    link = build_link(np.random.default_rng(17), 5)
    pol = PolarizedPattern(vertical=IsotropicPattern(), horizontal=IsotropicPattern())
    tx = make_ula(3, 0.5, F0, pattern=pol)
    rx = make_ula(2, 0.5, F0)
    with pytest.raises(InvalidParameterError, match="[Pp]olarized"):
        channel_baseline(link, tx, rx, F0, 0.0)
    with pytest.raises(InvalidParameterError, match="[Pp]olarized"):
        precompute_spatial(link, tx, rx)


def test_memory_formula_reference_values():
    assert spatial_memory_bytes(10, 240, 4, 256, 8) == 19_968_000
    assert spatial_memory_bytes(10, 240, 4, 8, 8) == 921_600
    assert spatial_memory_bytes(1, 1, 1, 1, 1) == 8


def test_memory_formula_scaling_and_validation():
    one = spatial_memory_bytes(1, 240, 4, 64)
    assert spatial_memory_bytes(7, 240, 4, 64) == 7 * one
    assert spatial_memory_bytes(1, 240, 4, 64, real_width_bytes=4) == one // 2
    with pytest.raises(InvalidParameterError):
        spatial_memory_bytes(0, 240, 4, 64)
    with pytest.raises(InvalidParameterError):
        spatial_memory_bytes(1, 240, -4, 64)
    with pytest.raises(InvalidParameterError):
        spatial_memory_bytes(1.5, 240, 4, 64)
    with pytest.raises(InvalidParameterError):
        spatial_memory_bytes(True, 240, 4, 64)


def test_channel_grid_container_validation():
    values = np.zeros((1, 2, 2, 3), dtype=np.complex128)
    with pytest.raises(InvalidParameterError):
        ChannelGrid(values=values, times=np.zeros(2), freqs=np.zeros(2))
