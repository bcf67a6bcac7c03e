"""Dual-polarized engine against the hand-rolled 2x2-coupling reference."""

import dataclasses

import numpy as np
import pytest

from gbscm import (
    COMPONENT_ORDER,
    CosinePowerPattern,
    InvalidParameterError,
    IsotropicPattern,
    PolarizedLink,
    PolarizedPattern,
    PolarizedSubpathExtras,
    ScenarioConfig,
    SectorPattern,
    channel_optimized,
    generate_polarized_links,
    make_ula,
    polarized_channel,
    polarized_channel_baseline,
    polarized_channel_components,
    polarized_channel_grid,
    polarized_component_grids,
    precompute_polarized,
    precompute_spatial,
)

import reference_impl
from conftest import ZeroPattern

F0 = 3.0e9

CFG = ScenarioConfig(
    link_count=2,
    cluster_count=4,
    subpaths_per_cluster=3,
    rx_speed_range=(1.0, 1.0),
    rng_seed=5,
)


def _pol_pair(n_tx=3, n_rx=2, tx_pol=None, rx_pol=None):
    tx_pol = tx_pol or PolarizedPattern(
        vertical=IsotropicPattern(), horizontal=CosinePowerPattern(exponent=0.8)
    )
    rx_pol = rx_pol or PolarizedPattern(
        vertical=SectorPattern(az_beamwidth_deg=90.0), horizontal=IsotropicPattern()
    )
    return make_ula(n_tx, 0.5, F0, pattern=tx_pol), make_ula(n_rx, 0.5, F0, pattern=rx_pol)


def test_fast_path_matches_scalar_reference():
    tx, rx = _pol_pair()
    for plink in generate_polarized_links(CFG):
        psp = precompute_polarized(plink, tx, rx)
        for f, t in [(F0, 0.0), (F0 + 4e6, 0.61)]:
            got = polarized_channel(psp, f, t)
            want = reference_impl.scalar_polarized_channel(plink, tx, rx, f, t)
            assert reference_impl.max_relative_error(got, want) <= 1e-12


def test_baseline_matches_scalar_reference():
    tx, rx = _pol_pair()
    plink = generate_polarized_links(CFG)[0]
    f, t = F0 - 2e6, 0.33
    got = polarized_channel_baseline(plink, tx, rx, f, t)
    want = reference_impl.scalar_polarized_channel(plink, tx, rx, f, t)
    assert reference_impl.max_relative_error(got, want) <= 1e-12


def test_baseline_agrees_with_fast_path():
    tx, rx = _pol_pair()
    plink = generate_polarized_links(CFG)[1]
    psp = precompute_polarized(plink, tx, rx)
    f, t = F0 + 1e7, 1.7
    base = polarized_channel_baseline(plink, tx, rx, f, t)
    fast = polarized_channel(psp, f, t)
    assert np.max(np.abs(fast - base)) / np.max(np.abs(base)) <= 1e-12


def test_components_sum_to_the_total_exactly():
    tx, rx = _pol_pair()
    plink = generate_polarized_links(CFG)[0]
    psp = precompute_polarized(plink, tx, rx)
    f, t = F0 + 6e5, 0.9
    comps = polarized_channel_components(psp, f, t)
    assert tuple(comps) == COMPONENT_ORDER
    total = ((comps["vv"] + comps["vh"]) + comps["hv"]) + comps["hh"]
    assert np.array_equal(total, polarized_channel(psp, f, t))


def test_vertical_only_collapse_is_bitwise_scalar():
    # silence both horizontal ports; the total must equal the scalar engine
    # run on the same geometry with the vv phases, bit for bit
    pol = PolarizedPattern(vertical=IsotropicPattern(), horizontal=ZeroPattern())
    tx = make_ula(4, 0.5, F0, pattern=pol)
    rx = make_ula(2, 0.5, F0, pattern=pol)
    plink = generate_polarized_links(CFG)[0]
    psp = precompute_polarized(plink, tx, rx)

    scalar_subpaths = tuple(
        dataclasses.replace(s, phase=e.phase_vv)
        for s, e in zip(plink.link.subpaths, plink.extras)
    )
    scalar_link = dataclasses.replace(plink.link, subpaths=scalar_subpaths)
    tx_s = make_ula(4, 0.5, F0)
    rx_s = make_ula(2, 0.5, F0)
    sp = precompute_spatial(scalar_link, tx_s, rx_s)

    for f, t in [(F0, 0.0), (F0 + 3e6, 0.45)]:
        assert np.array_equal(polarized_channel(psp, f, t), channel_optimized(sp, f, t))


def test_strong_xpr_suppresses_cross_components():
    plink = generate_polarized_links(CFG)[0]
    extras = tuple(dataclasses.replace(e, kappa=1e30) for e in plink.extras)
    hard = PolarizedLink(link=plink.link, extras=extras)
    tx, rx = _pol_pair()
    psp = precompute_polarized(hard, tx, rx)
    comps = polarized_channel_components(psp, F0, 0.2)
    co_scale = max(np.max(np.abs(comps["vv"])), np.max(np.abs(comps["hh"])))
    assert np.max(np.abs(comps["vh"])) <= 1e-14 * co_scale
    assert np.max(np.abs(comps["hv"])) <= 1e-14 * co_scale


def test_grid_matches_pointwise_bit_for_bit():
    tx, rx = _pol_pair()
    plink = generate_polarized_links(CFG)[0]
    psp = precompute_polarized(plink, tx, rx)
    times = np.array([0.0, 5e-4])
    freqs = F0 + 15e3 * np.arange(3)
    grid = polarized_channel_grid(psp, freqs, times)
    assert grid.values.shape == (2, 3, 2, 3)
    for i, t in enumerate(times):
        for k, f in enumerate(freqs):
            assert np.array_equal(grid.values[i, k], polarized_channel(psp, f, t))


def test_component_grids_match_pointwise():
    tx, rx = _pol_pair()
    plink = generate_polarized_links(CFG)[0]
    psp = precompute_polarized(plink, tx, rx)
    times = np.array([0.0, 1e-3])
    freqs = np.array([F0])
    grids = polarized_component_grids(psp, freqs, times)
    assert tuple(grids) == COMPONENT_ORDER
    for i, t in enumerate(times):
        for k, f in enumerate(freqs):
            comps = polarized_channel_components(psp, f, t)
            for key in COMPONENT_ORDER:
                assert np.array_equal(grids[key].values[i, k], comps[key])


def test_ports_share_steering_phases():
    # both port matrices are the same unit phasor scaled by a real gain, so
    # their entrywise product against the conjugate port is real nonnegative
    tx, rx = _pol_pair()
    plink = generate_polarized_links(CFG)[0]
    psp = precompute_polarized(plink, tx, rx)
    for v_mat, h_mat in ((psp.s_v, psp.s_h), (psp.r_v, psp.r_h)):
        prod = v_mat * np.conj(h_mat)
        assert np.max(np.abs(prod.imag)) <= 1e-12 * max(np.max(np.abs(prod)), 1e-300)
        assert np.min(prod.real) >= -1e-15


def test_extras_validation():
    with pytest.raises(InvalidParameterError):
        PolarizedSubpathExtras(0.0, 0.0, 0.0, 0.0, kappa=0.0)
    with pytest.raises(InvalidParameterError):
        PolarizedSubpathExtras(0.0, 0.0, 0.0, 0.0, kappa=-2.0)
    e = PolarizedSubpathExtras(-1.0, 7.0, 0.0, 0.0, kappa=3.0)
    assert 0.0 <= e.phase_vv < 2 * np.pi
    assert 0.0 <= e.phase_vh < 2 * np.pi


def test_polarized_link_length_check():
    plink = generate_polarized_links(CFG)[0]
    with pytest.raises(InvalidParameterError):
        PolarizedLink(link=plink.link, extras=plink.extras[:-1])


def test_scalar_arrays_are_rejected():
    plink = generate_polarized_links(CFG)[0]
    plain_tx = make_ula(3, 0.5, F0)
    plain_rx = make_ula(2, 0.5, F0)
    with pytest.raises(InvalidParameterError, match="[Pp]olarized"):
        precompute_polarized(plink, plain_tx, plain_rx)
    with pytest.raises(InvalidParameterError, match="[Pp]olarized"):
        polarized_channel_baseline(plink, plain_tx, plain_rx, F0, 0.0)


def test_carrier_mismatch_is_rejected():
    plink = generate_polarized_links(CFG)[0]
    pol = PolarizedPattern(vertical=IsotropicPattern(), horizontal=IsotropicPattern())
    wrong = make_ula(3, 0.5, 2.0e9, pattern=pol)
    ok = make_ula(2, 0.5, F0, pattern=pol)
    with pytest.raises(InvalidParameterError):
        precompute_polarized(plink, wrong, ok)
