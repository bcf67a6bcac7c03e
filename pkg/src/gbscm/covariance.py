"""Spatial covariance laboratory.

Three ways to the same second-order statistic of one link:

* :func:`theoretical_covariance` -- closed form.  The receive-side
  covariance is ``R_w · D · R_wᴴ`` where ``R_w`` is the receive spatial
  matrix with subpath amplitudes folded in and ``D`` is the
  :func:`doppler_gram`: the transmit-side Gram matrix masked down to
  subpath pairs with equal Doppler coefficients (distinct-Doppler cross
  terms time-average to zero).  The transmit side mirrors the construction
  with the two spatial matrices' roles exchanged.  Sides are named by which
  array's matrix does the sandwiching: receive -> (n_rx, n_rx).
* :func:`sample_covariance_time` -- average of instantaneous outer products
  over a time grid at fixed frequency.  Converges slowly (or, with
  degenerate Doppler, not at all) to the theoretical value.
* :func:`sample_covariance_ensemble` -- average over i.i.d. initial-phase
  redraws of the same geometry at one fixed (frequency, time).  Converges
  like 1/sqrt(n_draws) to the diagonal-D limit regardless of motion.

The two expectations disagree exactly when Doppler coefficients collide
(e.g. both terminals static): phase redraws still decorrelate subpaths,
time averaging cannot.  ``theoretical_covariance(..., expectation=...)``
exposes both limits; they are identical whenever all Doppler coefficients
are distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .antenna import ArrayDescriptor, make_ula
from .engine import (
    SpatialMatrices,
    _delay_phasors,
    _doppler_phasors,
    _readonly,
    precompute_spatial,
)
from .errors import InvalidParameterError
from .geometry import LinkMultipath

#: Default sample spacing for time-series estimates: one LTE-like symbol
#: period (140 samples per 10 ms frame).
DEFAULT_SAMPLE_INTERVAL = 1.0e-2 / 140.0

_BLOCK = 4096


@dataclass(frozen=True, eq=False)
class CovarianceReport:
    """A spatial covariance matrix plus where it came from.

    ``side`` records which array sandwiches the statistic (``receive`` ->
    (n_rx, n_rx), ``transmit`` -> (n_tx, n_tx)); ``provenance`` is one of
    ``theoretical``, ``time_sample``, ``ensemble_sample`` with the matching
    metadata fields filled.  Construction enforces the type's contract:
    Hermitian to 1e-10 relative and positive semidefinite to eigenvalue
    tolerance -1e-9 times the largest eigenvalue.
    """

    matrix: np.ndarray
    side: str
    provenance: str
    n_samples: Optional[int] = None
    sample_interval: Optional[float] = None
    n_draws: Optional[int] = None
    expectation: Optional[str] = None
    frobenius_error_vs_theoretical: Optional[float] = None

    def __post_init__(self):
        k = np.asarray(self.matrix)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise InvalidParameterError(f"covariance must be square, got {k.shape}")
        scale = np.linalg.norm(k)
        if scale > 0.0 and np.linalg.norm(k - k.conj().T) > 1e-10 * scale:
            raise InvalidParameterError("covariance failed the Hermitian check")
        eigs = np.linalg.eigvalsh(k)
        if eigs[0] < -1e-9 * max(eigs[-1], 0.0):
            raise InvalidParameterError("covariance failed the PSD check")
        object.__setattr__(self, "matrix", _readonly(k))


@dataclass(frozen=True, eq=False)
class DopplerGram:
    """Masked Gram matrix of the Doppler expectation, plus its structure.

    ``matrix[m, m']`` is the (transmit-side, by default) Gram entry where
    subpaths m and m' share a Doppler coefficient, zero elsewhere.
    ``equal_doppler_groups`` partitions subpath indices by Doppler value;
    the matrix is diagonal exactly when every group is a singleton.
    """

    matrix: np.ndarray
    equal_doppler_groups: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", _readonly(np.asarray(self.matrix)))

    @property
    def is_diagonal(self) -> bool:
        return all(len(g) == 1 for g in self.equal_doppler_groups)


def _doppler_groups(
    doppler: np.ndarray, nu_tolerance: float
) -> Tuple[Tuple[int, ...], ...]:
    """Partition subpath indices by Doppler value, chaining within tolerance."""
    order = np.argsort(doppler, kind="stable")
    groups: List[List[int]] = []
    for idx in order:
        if groups and doppler[idx] - doppler[groups[-1][-1]] <= nu_tolerance:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    groups = [sorted(g) for g in groups]
    groups.sort(key=lambda g: g[0])
    return tuple(tuple(g) for g in groups)


def _group_mask(groups, m: int) -> np.ndarray:
    gid = np.empty(m, dtype=int)
    for i, g in enumerate(groups):
        for idx in g:
            gid[idx] = i
    return gid[:, None] == gid[None, :]


def doppler_gram(sp: SpatialMatrices, nu_tolerance: float = 1e-12) -> DopplerGram:
    """Time expectation of the per-subpath-pair Doppler phasor structure.

    Cross terms between subpaths with distinct Doppler coefficients average
    to zero over time; surviving entries carry the transmit-side Gram value
    (sum over transmit elements of ``S[s, m] * conj(S[s, m'])``).  With all
    coefficients distinct this is exactly the diagonal of squared column
    norms of the transmit spatial matrix.
    """
    if nu_tolerance < 0.0:
        raise InvalidParameterError(
            f"Doppler tolerance must be >= 0, got {nu_tolerance}"
        )
    groups = _doppler_groups(sp.doppler, nu_tolerance)
    gram = sp.s_matrix.T @ sp.s_matrix.conj()
    matrix = np.where(_group_mask(groups, sp.n_subpaths), gram, 0.0)
    return DopplerGram(matrix=matrix, equal_doppler_groups=groups)


def _masked_gram(
    spatial: np.ndarray,
    doppler: np.ndarray,
    nu_tolerance: float,
    expectation: str,
) -> np.ndarray:
    """Gram of ``spatial``'s columns masked by the chosen expectation.

    ``time`` keeps all equal-Doppler blocks; ``ensemble`` keeps only the
    diagonal (independent phase redraws decorrelate every subpath pair).
    The two masks agree when every Doppler group is a singleton, and so do
    the resulting covariance matrices, bit for bit.
    """
    m = doppler.shape[0]
    if expectation == "time":
        mask = _group_mask(_doppler_groups(doppler, nu_tolerance), m)
    elif expectation == "ensemble":
        mask = np.eye(m, dtype=bool)
    else:
        raise InvalidParameterError(
            f"expectation must be 'time' or 'ensemble', got {expectation!r}"
        )
    gram = spatial.T @ spatial.conj()
    return np.where(mask, gram, 0.0)


def _sandwich_parts(sp: SpatialMatrices, side: str):
    """(sandwiching matrix, gram source matrix) for a covariance side."""
    if side == "receive":
        return sp.r_matrix, sp.s_matrix
    if side == "transmit":
        return sp.s_matrix, sp.r_matrix
    raise InvalidParameterError(f"side must be 'receive' or 'transmit', got {side!r}")


def theoretical_covariance(
    sp: SpatialMatrices,
    side: str = "receive",
    nu_tolerance: float = 1e-12,
    expectation: str = "time",
) -> CovarianceReport:
    """Closed-form spatial covariance of one link-array pairing.

    Receive side: ``K = R_w · D · R_wᴴ`` with ``R_w`` the receive spatial
    matrix scaled per column by subpath amplitude and ``D`` the masked Gram
    of the transmit matrix (see :func:`_masked_gram`); transmit side
    mirrors with the matrices' roles exchanged.  Takes no frequency or time
    argument -- the statistic has neither, which is the invariance the
    estimators chase.

    ``expectation`` picks which estimator's limit to report: ``time``
    (equal-Doppler blocks survive) or ``ensemble`` (strictly diagonal D).
    Identical results whenever all Doppler coefficients are distinct.
    """
    if nu_tolerance < 0.0:
        raise InvalidParameterError(
            f"Doppler tolerance must be >= 0, got {nu_tolerance}"
        )
    sandwich, gram_src = _sandwich_parts(sp, side)
    d = _masked_gram(gram_src, sp.doppler, nu_tolerance, expectation)
    b = sandwich * sp.amplitudes
    k = (b @ d) @ b.conj().T
    return CovarianceReport(
        matrix=k, side=side, provenance="theoretical", expectation=expectation
    )


def frequency_weights(sp: SpatialMatrices, f: float) -> np.ndarray:
    """Composite per-subpath weights at frequency ``f`` (time factored out).

    The product of amplitude, initial-phase phasor and delay phasor.  Its
    entrywise squared magnitude is the squared amplitudes for every ``f``
    -- the delay and phase phasors are unit modulus -- which is why the
    theoretical covariance carries no frequency dependence.
    """
    return (sp.amplitudes * sp.phase_factors) * _delay_phasors(sp.delays, f)


def _relative_frobenius(estimate: np.ndarray, reference: np.ndarray) -> float:
    return float(np.linalg.norm(estimate - reference) / np.linalg.norm(reference))


def _accumulate(side: str, h_block: np.ndarray) -> np.ndarray:
    """Sum of per-sample covariance terms for one block of channel matrices."""
    if side == "receive":
        return np.einsum("brs,bqs->rq", h_block, h_block.conj())
    return np.einsum("brs,brq->sq", h_block, h_block.conj())


def sample_covariance_time(
    sp: SpatialMatrices,
    f: float,
    times: Sequence[float],
    side: str = "receive",
    nu_tolerance: float = 1e-12,
) -> CovarianceReport:
    """Sample covariance from successive channel snapshots at one frequency.

    Averages the instantaneous outer product (``H Hᴴ`` on the receive side,
    ``Hᵀ H*`` on the transmit side) over the given time grid, accumulating
    in fixed-size blocks in a fixed order, so the result is reproducible
    regardless of BLAS threading.  The reported error is measured against
    the time-expectation theoretical covariance.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise InvalidParameterError("times must be a non-empty 1-d sequence")
    _sandwich_parts(sp, side)  # validate side before any heavy work
    weighted_rx = sp.r_matrix * sp.amplitudes
    s_t = sp.s_matrix.T
    static = sp.phase_factors * _delay_phasors(sp.delays, f)
    total = 0
    for lo in range(0, times.size, _BLOCK):
        t_block = times[lo : lo + _BLOCK]
        phasors = np.exp(t_block[:, None] * ((1j * sp.k0) * sp.doppler)[None, :])
        h_block = (weighted_rx[None, :, :] * (static * phasors)[:, None, :]) @ s_t
        total = total + _accumulate(side, h_block)
    k = total / times.size
    reference = theoretical_covariance(sp, side, nu_tolerance, expectation="time")
    steps = np.diff(times)
    uniform = steps.size > 0 and np.allclose(steps, steps[0], rtol=1e-9, atol=0.0)
    return CovarianceReport(
        matrix=k,
        side=side,
        provenance="time_sample",
        n_samples=int(times.size),
        sample_interval=float(steps[0]) if uniform else None,
        frobenius_error_vs_theoretical=_relative_frobenius(k, reference.matrix),
    )


def sample_covariance_ensemble(
    link: LinkMultipath,
    tx: ArrayDescriptor,
    rx: ArrayDescriptor,
    f: float,
    t: float,
    n_draws: int,
    seed,
    side: str = "receive",
    nu_tolerance: float = 1e-12,
) -> CovarianceReport:
    """Sample covariance over i.i.d. initial-phase redraws at fixed (f, t).

    Draw ``d`` uses the substream ``SeedSequence(seed).spawn(n_draws)[d]``
    and reproduces :func:`gbscm.scenario.redraw_phases` with that substream
    exactly.  Accumulation is blockwise in draw order, deterministic under
    the seed.  The reported error is measured against the
    ensemble-expectation theoretical covariance (strictly diagonal D),
    which is this estimator's large-draw limit for any velocities.
    """
    if n_draws < 1:
        raise InvalidParameterError(f"n_draws must be >= 1, got {n_draws}")
    sp = precompute_spatial(link, tx, rx)
    _sandwich_parts(sp, side)
    weighted_rx = sp.r_matrix * sp.amplitudes
    s_t = sp.s_matrix.T
    static = _doppler_phasors(sp.doppler, sp.k0, t) * _delay_phasors(sp.delays, f)
    children = np.random.SeedSequence(seed).spawn(n_draws)
    m = sp.n_subpaths
    total = 0
    for lo in range(0, n_draws, _BLOCK):
        block = children[lo : lo + _BLOCK]
        phases = np.empty((len(block), m))
        for i, child in enumerate(block):
            phases[i] = np.random.default_rng(child).uniform(0.0, 2.0 * np.pi, m)
        weights = np.exp(1j * phases) * static
        h_block = (weighted_rx[None, :, :] * weights[:, None, :]) @ s_t
        total = total + _accumulate(side, h_block)
    k = total / n_draws
    reference = theoretical_covariance(sp, side, nu_tolerance, expectation="ensemble")
    return CovarianceReport(
        matrix=k,
        side=side,
        provenance="ensemble_sample",
        n_draws=int(n_draws),
        frobenius_error_vs_theoretical=_relative_frobenius(k, reference.matrix),
    )


@dataclass(frozen=True)
class ConvergenceRow:
    """One point of a convergence curve: estimator name, sample budget, error."""

    estimator: str
    budget: int
    frobenius_error: float


def convergence_experiment(
    config,
    horizons: Sequence[int],
    n_draws_list: Sequence[int],
    tx: Optional[ArrayDescriptor] = None,
    rx: Optional[ArrayDescriptor] = None,
    *,
    sample_interval: float = DEFAULT_SAMPLE_INTERVAL,
    frequency: Optional[float] = None,
    t: float = 0.0,
    side: str = "receive",
    seed: Optional[int] = None,
) -> List[ConvergenceRow]:
    """Time-average vs ensemble-average convergence on matched budgets.

    Draws the first link of ``config`` (a :class:`~gbscm.scenario.ScenarioConfig`),
    then evaluates the time estimator at each horizon (``budget`` samples,
    ``sample_interval`` apart) and the ensemble estimator at each draw
    count, reporting each estimate's relative Frobenius error against its
    own theoretical limit.  Arrays default to half-wavelength isotropic
    ULAs (4 receive, 8 transmit elements) at the config carrier.
    """
    from .scenario import generate_links  # local import keeps module load light

    horizons = [int(h) for h in horizons]
    n_draws_list = [int(n) for n in n_draws_list]
    if any(h < 1 for h in horizons) or any(n < 1 for n in n_draws_list):
        raise InvalidParameterError("budgets must be integers >= 1")
    if sample_interval <= 0.0:
        raise InvalidParameterError(
            f"sample interval must be positive, got {sample_interval}"
        )
    link = generate_links(config)[0]
    if tx is None:
        tx = make_ula(8, 0.5, config.f0)
    if rx is None:
        rx = make_ula(4, 0.5, config.f0)
    f = config.f0 if frequency is None else float(frequency)
    base_seed = config.rng_seed if seed is None else int(seed)
    sp = precompute_spatial(link, tx, rx)
    rows = []
    for h in horizons:
        report = sample_covariance_time(sp, f, np.arange(h) * sample_interval, side)
        rows.append(
            ConvergenceRow("time", h, report.frobenius_error_vs_theoretical)
        )
    for n in n_draws_list:
        report = sample_covariance_ensemble(link, tx, rx, f, t, n, base_seed, side)
        rows.append(
            ConvergenceRow("ensemble", n, report.frobenius_error_vs_theoretical)
        )
    return rows
