"""Channel matrix engines.

Two interchangeable evaluators for the narrowband MIMO channel of one link:

* :func:`channel_baseline` -- the direct sum over subpaths, re-deriving
  per-element steering phases, element gains and Doppler terms on every
  call.  It is the readable definition of the model and the benchmark's
  reference cost.
* :func:`precompute_spatial` + :func:`channel_optimized` /
  :func:`channel_grid` -- factorized evaluation.  All frequency- and
  time-independent work (element gains times steering phasors, per subpath)
  is hoisted into two spatial matrices; each (f, t) evaluation then reduces
  to scaling the receive matrix's columns by a length-``n_subpaths`` weight
  vector and one small matrix product.  No (M, M) diagonal matrix is ever
  materialized.

Both engines sum subpaths in the same index order, so they agree to
floating-point rounding (relative differences around 1e-13 in practice).
Grid evaluation reuses the exact scalar-call expressions, so
``channel_grid`` cells equal ``channel_optimized`` values bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .antenna import ArrayDescriptor, PolarizedPattern
from .errors import InvalidParameterError
from .geometry import LinkMultipath, wavenumber


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _check_pairing(link: LinkMultipath, tx: ArrayDescriptor, rx: ArrayDescriptor):
    """Reject array/link pairings that would silently mis-model geometry."""
    for name, arr in (("tx", tx), ("rx", rx)):
        if arr.design_f0 is not None and arr.design_f0 != link.f0:
            raise InvalidParameterError(
                f"{name} array was built for a {arr.design_f0} Hz carrier but the "
                f"link runs at {link.f0} Hz; rebuild the array for this carrier"
            )
        if isinstance(arr.pattern, PolarizedPattern):
            raise InvalidParameterError(
                f"{name} array has a polarized element pattern; use the "
                "dual-polarized engine (gbscm.polarized) instead"
            )


def _doppler_phasors(doppler: np.ndarray, k0: float, t: float) -> np.ndarray:
    """exp(j * k0 * doppler * t), with a fixed grouping of the real factors."""
    return np.exp(((1j * k0) * doppler) * t)


def _delay_phasors(delays: np.ndarray, f: float) -> np.ndarray:
    """exp(-2j * pi * f * delays), with a fixed grouping of the real factors."""
    return np.exp(((-2j * np.pi) * f) * delays)


def channel_baseline(
    link: LinkMultipath, tx: ArrayDescriptor, rx: ArrayDescriptor, f: float, t: float
) -> np.ndarray:
    """Direct-sum channel matrix at one (frequency, time) point.

    Everything -- element gains, steering phasors, Doppler and delay terms
    -- is recomputed from the link description on each call.  Returns an
    (n_rx, n_tx) complex matrix.
    """
    _check_pairing(link, tx, rx)
    k0 = wavenumber(link.f0)
    gain_tx = tx.pattern.gain(link.departure_theta, link.departure_phi)
    gain_rx = rx.pattern.gain(link.arrival_theta, link.arrival_phi)
    tx_side = gain_tx * np.exp((1j * k0) * (tx.positions @ link.departure_directions.T))
    rx_side = gain_rx * np.exp((1j * k0) * (rx.positions @ link.arrival_directions.T))
    weights = np.sqrt(link.powers) * np.exp(
        1j * (link.phases + (k0 * link.doppler_coefficients) * t)
        + ((-2j * np.pi) * f) * link.delays
    )
    return np.einsum("rm,sm,m->rs", rx_side, tx_side, weights)


@dataclass(frozen=True, eq=False)
class SpatialMatrices:
    """Frequency/time-independent factor of one link-array pairing.

    ``s_matrix[s, m]`` is the transmit element gain times the transmit
    steering phasor of subpath ``m`` at element ``s``; ``r_matrix`` is the
    receive-side mirror.  The per-subpath columns (amplitudes, Doppler
    speeds, delays, initial-phase phasors) complete everything a channel
    evaluation needs.
    """

    s_matrix: np.ndarray  # (n_tx, n_subpaths) complex
    r_matrix: np.ndarray  # (n_rx, n_subpaths) complex
    amplitudes: np.ndarray  # (n_subpaths,) sqrt of subpath powers
    doppler: np.ndarray  # (n_subpaths,) closing speeds, m/s
    delays: np.ndarray  # (n_subpaths,) seconds
    phase_factors: np.ndarray  # (n_subpaths,) exp(j * initial phase)
    k0: float

    def __post_init__(self):
        for name in ("s_matrix", "r_matrix", "amplitudes", "doppler", "delays", "phase_factors"):
            object.__setattr__(self, name, _readonly(np.asarray(getattr(self, name))))
        m = self.amplitudes.shape[0]
        if self.s_matrix.ndim != 2 or self.r_matrix.ndim != 2:
            raise InvalidParameterError("spatial matrices must be 2-d")
        if (
            self.s_matrix.shape[1] != m
            or self.r_matrix.shape[1] != m
            or self.doppler.shape != (m,)
            or self.delays.shape != (m,)
            or self.phase_factors.shape != (m,)
        ):
            raise InvalidParameterError(
                "spatial matrices and per-subpath columns disagree on subpath count"
            )

    @property
    def n_rx(self) -> int:
        return self.r_matrix.shape[0]

    @property
    def n_tx(self) -> int:
        return self.s_matrix.shape[0]

    @property
    def n_subpaths(self) -> int:
        return self.amplitudes.shape[0]


def precompute_spatial(
    link: LinkMultipath, tx: ArrayDescriptor, rx: ArrayDescriptor
) -> SpatialMatrices:
    """Hoist all frequency/time-independent work into spatial matrices."""
    _check_pairing(link, tx, rx)
    k0 = wavenumber(link.f0)
    gain_tx = tx.pattern.gain(link.departure_theta, link.departure_phi)
    gain_rx = rx.pattern.gain(link.arrival_theta, link.arrival_phi)
    s_matrix = gain_tx * np.exp((1j * k0) * (tx.positions @ link.departure_directions.T))
    r_matrix = gain_rx * np.exp((1j * k0) * (rx.positions @ link.arrival_directions.T))
    return SpatialMatrices(
        s_matrix=s_matrix,
        r_matrix=r_matrix,
        amplitudes=np.sqrt(link.powers),
        doppler=link.doppler_coefficients.copy(),
        delays=link.delays.copy(),
        phase_factors=np.exp(1j * link.phases),
        k0=k0,
    )


def channel_optimized(sp: SpatialMatrices, f: float, t: float) -> np.ndarray:
    """Channel matrix at one (frequency, time) point from precomputed factors.

    Scales the receive matrix's subpath columns by the composite weight
    (amplitude, initial phase, Doppler, delay) and contracts against the
    transmit matrix: one (n_rx, M) x (M, n_tx) product, never an (M, M)
    diagonal.
    """
    weighted_rx = sp.r_matrix * sp.amplitudes
    w = (sp.phase_factors * _doppler_phasors(sp.doppler, sp.k0, t)) * _delay_phasors(
        sp.delays, f
    )
    return (weighted_rx * w) @ sp.s_matrix.T


@dataclass(frozen=True, eq=False)
class ChannelGrid:
    """Channel matrices over a time x frequency grid.

    ``values[i, k]`` is the (n_rx, n_tx) matrix at ``times[i]``,
    ``freqs[k]``.
    """

    values: np.ndarray  # (n_times, n_freqs, n_rx, n_tx) complex
    times: np.ndarray  # (n_times,) seconds
    freqs: np.ndarray  # (n_freqs,) Hz

    def __post_init__(self):
        for name in ("values", "times", "freqs"):
            object.__setattr__(self, name, _readonly(np.asarray(getattr(self, name))))
        if self.values.shape[:2] != (self.times.shape[0], self.freqs.shape[0]):
            raise InvalidParameterError("grid values do not match the time/freq axes")


def channel_grid(
    sp: SpatialMatrices, freqs: Sequence[float], times: Sequence[float]
) -> ChannelGrid:
    """Evaluate the optimized engine over a full (time, frequency) grid.

    Cell (i, k) is computed by the exact expressions of
    :func:`channel_optimized` at ``(freqs[k], times[i])`` -- same factor
    grouping, same reduction -- so the results match the pointwise calls
    bit for bit.  Cells are evaluated sequentially in row-major (time-major)
    order; there are no cross-cell reductions.
    """
    freqs = np.asarray(freqs, dtype=float)
    times = np.asarray(times, dtype=float)
    if freqs.ndim != 1 or freqs.size == 0 or times.ndim != 1 or times.size == 0:
        raise InvalidParameterError("freqs and times must be non-empty 1-d sequences")
    weighted_rx = sp.r_matrix * sp.amplitudes
    s_t = sp.s_matrix.T
    values = np.empty(
        (times.size, freqs.size, sp.n_rx, sp.n_tx), dtype=np.complex128
    )
    for i, t in enumerate(times):
        time_part = sp.phase_factors * _doppler_phasors(sp.doppler, sp.k0, t)
        for k, f in enumerate(freqs):
            values[i, k] = (weighted_rx * (time_part * _delay_phasors(sp.delays, f))) @ s_t
    return ChannelGrid(values=values, times=times, freqs=freqs)


def spatial_memory_bytes(
    links: int,
    subpaths: int,
    rx_antennas: int,
    tx_antennas: int,
    real_width_bytes: int = 8,
) -> int:
    """Bytes needed to hold the precomputed spatial matrices of a drop.

    Per link the factorization stores an (rx_antennas, subpaths) and a
    (tx_antennas, subpaths) complex matrix -- two reals per entry -- and
    evaluation forms an equal-size weighted working copy, giving

    ``4 * links * subpaths * (rx_antennas + tx_antennas) * real_width_bytes``.

    Python integers are arbitrary precision, so this never overflows.
    """
    for name, v in (
        ("links", links),
        ("subpaths", subpaths),
        ("rx_antennas", rx_antennas),
        ("tx_antennas", tx_antennas),
        ("real_width_bytes", real_width_bytes),
    ):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InvalidParameterError(f"{name} must be an integer >= 1, got {v!r}")
    return 4 * links * subpaths * (rx_antennas + tx_antennas) * real_width_bytes
