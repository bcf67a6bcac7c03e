"""Dual-polarized channel engine.

Extends the scalar model with a 2x2 polarization sandwich per subpath:
each subpath carries four independent phases, one per (receive
polarization, transmit polarization) component, and the two cross
components are attenuated by the inverse square root of the subpath's
cross-polarization power ratio ``kappa``.

The factorized evaluator keeps four spatial matrices -- vertical and
horizontal flavors per side -- that share their steering phasors by
construction and differ only in element gain.  The channel is the
entrywise sum of the four single-polarization component matrices, each
evaluated exactly like the scalar fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from .antenna import ArrayDescriptor, PolarizedPattern
from .engine import ChannelGrid, _delay_phasors, _doppler_phasors, _readonly
from .errors import InvalidParameterError
from .geometry import LinkMultipath, wavenumber

_TWO_PI = 2.0 * math.pi

#: Component order used everywhere (dict keys, summation, phase redraws):
#: receive polarization first, transmit polarization second.
COMPONENT_ORDER = ("vv", "vh", "hv", "hh")


@dataclass(frozen=True)
class PolarizedSubpathExtras:
    """Polarization state of one subpath.

    ``phase_xy`` is the initial phase of the component received on
    polarization ``x`` and transmitted on polarization ``y`` (radians,
    stored wrapped into [0, 2*pi)).  ``kappa`` is the linear
    cross-polarization power ratio; the vh and hv components are scaled by
    ``1/sqrt(kappa)`` while the co-polarized components are not.
    """

    phase_vv: float
    phase_vh: float
    phase_hv: float
    phase_hh: float
    kappa: float

    def __post_init__(self):
        if not (self.kappa > 0.0):
            raise InvalidParameterError(
                f"cross-polarization ratio must be > 0, got {self.kappa}"
            )
        for name in ("phase_vv", "phase_vh", "phase_hv", "phase_hh"):
            object.__setattr__(self, name, float(getattr(self, name)) % _TWO_PI)


@dataclass(frozen=True)
class PolarizedLink:
    """A scalar link plus per-subpath polarization extras (same ordering)."""

    link: LinkMultipath
    extras: Tuple[PolarizedSubpathExtras, ...]

    def __post_init__(self):
        extras = tuple(self.extras)
        object.__setattr__(self, "extras", extras)
        if len(extras) != self.link.n_subpaths:
            raise InvalidParameterError(
                f"got {len(extras)} polarization entries for "
                f"{self.link.n_subpaths} subpaths"
            )


def _check_polarized_pairing(
    link: LinkMultipath, tx: ArrayDescriptor, rx: ArrayDescriptor
):
    for name, arr in (("tx", tx), ("rx", rx)):
        if arr.design_f0 is not None and arr.design_f0 != link.f0:
            raise InvalidParameterError(
                f"{name} array was built for a {arr.design_f0} Hz carrier but the "
                f"link runs at {link.f0} Hz; rebuild the array for this carrier"
            )
        if not isinstance(arr.pattern, PolarizedPattern):
            raise InvalidParameterError(
                f"{name} array needs a PolarizedPattern element for the "
                "dual-polarized engine; the scalar engine handles plain patterns"
            )


@dataclass(frozen=True, eq=False)
class PolarizedSpatialMatrices:
    """Precomputed factors of one polarized link-array pairing.

    The vertical/horizontal matrices of a side share their steering phasors
    and differ only by the per-port element gains.  ``depolarization`` is
    ``1/sqrt(kappa)`` per subpath; the four ``phase_factors_xy`` columns are
    ``exp(j * phase_xy)``.
    """

    s_v: np.ndarray  # (n_tx, n_subpaths) complex
    s_h: np.ndarray
    r_v: np.ndarray  # (n_rx, n_subpaths) complex
    r_h: np.ndarray
    amplitudes: np.ndarray  # (n_subpaths,)
    doppler: np.ndarray  # (n_subpaths,) m/s
    delays: np.ndarray  # (n_subpaths,) s
    depolarization: np.ndarray  # (n_subpaths,) 1/sqrt(kappa)
    phase_factors_vv: np.ndarray  # (n_subpaths,) complex
    phase_factors_vh: np.ndarray
    phase_factors_hv: np.ndarray
    phase_factors_hh: np.ndarray
    k0: float

    def __post_init__(self):
        for name in (
            "s_v",
            "s_h",
            "r_v",
            "r_h",
            "amplitudes",
            "doppler",
            "delays",
            "depolarization",
            "phase_factors_vv",
            "phase_factors_vh",
            "phase_factors_hv",
            "phase_factors_hh",
        ):
            object.__setattr__(self, name, _readonly(np.asarray(getattr(self, name))))

    @property
    def n_rx(self) -> int:
        return self.r_v.shape[0]

    @property
    def n_tx(self) -> int:
        return self.s_v.shape[0]

    @property
    def n_subpaths(self) -> int:
        return self.amplitudes.shape[0]


def precompute_polarized(
    plink: PolarizedLink, tx: ArrayDescriptor, rx: ArrayDescriptor
) -> PolarizedSpatialMatrices:
    """Hoist all frequency/time-independent polarized work.

    Computes each side's steering phasor matrix once and scales it by the
    vertical and horizontal port gains, which is what guarantees the two
    flavors share phases exactly.
    """
    link = plink.link
    _check_polarized_pairing(link, tx, rx)
    k0 = wavenumber(link.f0)
    steer_tx = np.exp((1j * k0) * (tx.positions @ link.departure_directions.T))
    steer_rx = np.exp((1j * k0) * (rx.positions @ link.arrival_directions.T))
    gt_v = tx.pattern.vertical.gain(link.departure_theta, link.departure_phi)
    gt_h = tx.pattern.horizontal.gain(link.departure_theta, link.departure_phi)
    gr_v = rx.pattern.vertical.gain(link.arrival_theta, link.arrival_phi)
    gr_h = rx.pattern.horizontal.gain(link.arrival_theta, link.arrival_phi)
    kappa = np.array([e.kappa for e in plink.extras])
    phases = {
        key: np.array([getattr(e, f"phase_{key}") for e in plink.extras])
        for key in COMPONENT_ORDER
    }
    return PolarizedSpatialMatrices(
        s_v=gt_v * steer_tx,
        s_h=gt_h * steer_tx,
        r_v=gr_v * steer_rx,
        r_h=gr_h * steer_rx,
        amplitudes=np.sqrt(link.powers),
        doppler=link.doppler_coefficients.copy(),
        delays=link.delays.copy(),
        depolarization=1.0 / np.sqrt(kappa),
        phase_factors_vv=np.exp(1j * phases["vv"]),
        phase_factors_vh=np.exp(1j * phases["vh"]),
        phase_factors_hv=np.exp(1j * phases["hv"]),
        phase_factors_hh=np.exp(1j * phases["hh"]),
        k0=float(k0),
    )


def polarized_channel_components(
    psp: PolarizedSpatialMatrices, f: float, t: float
) -> Dict[str, np.ndarray]:
    """The four (n_rx, n_tx) component matrices at one (frequency, time).

    Keys follow :data:`COMPONENT_ORDER`.  Each component is evaluated with
    the scalar fast path's exact expressions; in particular, ``vv`` on a
    vertical-only array pairing is bit-identical to the scalar engine's
    output for the matching scalar setup.
    """
    nu_t = _doppler_phasors(psp.doppler, psp.k0, t)
    xi_f = _delay_phasors(psp.delays, f)
    dep = psp.depolarization
    out = {}
    for key, r_mat, s_mat, cross in (
        ("vv", psp.r_v, psp.s_v, False),
        ("vh", psp.r_v, psp.s_h, True),
        ("hv", psp.r_h, psp.s_v, True),
        ("hh", psp.r_h, psp.s_h, False),
    ):
        phase = getattr(psp, f"phase_factors_{key}")
        if cross:
            phase = dep * phase
        out[key] = ((r_mat * psp.amplitudes) * ((phase * nu_t) * xi_f)) @ s_mat.T
    return out


def polarized_channel(
    psp: PolarizedSpatialMatrices, f: float, t: float
) -> np.ndarray:
    """Total dual-polarized channel matrix: entrywise sum of the components.

    Summed in :data:`COMPONENT_ORDER` (vv + vh + hv + hh), so the result
    equals adding the :func:`polarized_channel_components` matrices in that
    order exactly.
    """
    comps = polarized_channel_components(psp, f, t)
    return ((comps["vv"] + comps["vh"]) + comps["hv"]) + comps["hh"]


def polarized_channel_baseline(
    plink: PolarizedLink, tx: ArrayDescriptor, rx: ArrayDescriptor, f: float, t: float
) -> np.ndarray:
    """Direct-sum dual-polarized channel, recomputed from scratch per call.

    The reference implementation for the polarized fast path: builds the
    per-subpath polarization sandwich explicitly and contracts it against
    freshly computed steering and gain terms.
    """
    link = plink.link
    _check_polarized_pairing(link, tx, rx)
    k0 = wavenumber(link.f0)
    steer_tx = np.exp((1j * k0) * (tx.positions @ link.departure_directions.T))
    steer_rx = np.exp((1j * k0) * (rx.positions @ link.arrival_directions.T))
    gt = {
        "v": tx.pattern.vertical.gain(link.departure_theta, link.departure_phi),
        "h": tx.pattern.horizontal.gain(link.departure_theta, link.departure_phi),
    }
    gr = {
        "v": rx.pattern.vertical.gain(link.arrival_theta, link.arrival_phi),
        "h": rx.pattern.horizontal.gain(link.arrival_theta, link.arrival_phi),
    }
    inv_sqrt_kappa = np.array([1.0 / math.sqrt(e.kappa) for e in plink.extras])
    weights = np.sqrt(link.powers) * np.exp(
        1j * ((k0 * link.doppler_coefficients) * t)
        + ((-2j * np.pi) * f) * link.delays
    )
    total = np.zeros((rx.n_elements, tx.n_elements), dtype=np.complex128)
    for key in COMPONENT_ORDER:
        phase = np.exp(1j * np.array([getattr(e, f"phase_{key}") for e in plink.extras]))
        if key in ("vh", "hv"):
            phase = inv_sqrt_kappa * phase
        rx_side = gr[key[0]] * steer_rx
        tx_side = gt[key[1]] * steer_tx
        total += np.einsum("rm,sm,m->rs", rx_side, tx_side, weights * phase)
    return total


def polarized_channel_grid(
    psp: PolarizedSpatialMatrices, freqs: Sequence[float], times: Sequence[float]
) -> ChannelGrid:
    """Total polarized channel over a (time, frequency) grid.

    Cell (i, k) equals ``polarized_channel(psp, freqs[k], times[i])`` bit
    for bit (cells are evaluated by the same expressions, sequentially).
    """
    freqs = np.asarray(freqs, dtype=float)
    times = np.asarray(times, dtype=float)
    if freqs.ndim != 1 or freqs.size == 0 or times.ndim != 1 or times.size == 0:
        raise InvalidParameterError("freqs and times must be non-empty 1-d sequences")
    values = np.empty((times.size, freqs.size, psp.n_rx, psp.n_tx), dtype=np.complex128)
    for i, t in enumerate(times):
        for k, f in enumerate(freqs):
            values[i, k] = polarized_channel(psp, f, t)
    return ChannelGrid(values=values, times=times, freqs=freqs)


def polarized_component_grids(
    psp: PolarizedSpatialMatrices, freqs: Sequence[float], times: Sequence[float]
) -> Dict[str, ChannelGrid]:
    """Per-component grids, keyed by :data:`COMPONENT_ORDER`."""
    freqs = np.asarray(freqs, dtype=float)
    times = np.asarray(times, dtype=float)
    if freqs.ndim != 1 or freqs.size == 0 or times.ndim != 1 or times.size == 0:
        raise InvalidParameterError("freqs and times must be non-empty 1-d sequences")
    values = {
        key: np.empty((times.size, freqs.size, psp.n_rx, psp.n_tx), dtype=np.complex128)
        for key in COMPONENT_ORDER
    }
    for i, t in enumerate(times):
        for k, f in enumerate(freqs):
            comps = polarized_channel_components(psp, f, t)
            for key in COMPONENT_ORDER:
                values[key][i, k] = comps[key]
    return {
        key: ChannelGrid(values=values[key], times=times, freqs=freqs)
        for key in COMPONENT_ORDER
    }
