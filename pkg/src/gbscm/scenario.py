"""Random scenario generation: turning a small config into full link drops.

A *drop* draws, per link, the terminal velocities, a set of clusters
(delay, power, mean arrival/departure direction), and per-cluster subpaths
whose angles scatter around the cluster means.  Subpath powers split a
cluster's power equally and the grand total is renormalized to
``power_scale``.

Determinism contract: link ``i`` of a config with seed ``s`` is drawn from
``numpy.random.SeedSequence([s, i])``, so links are independent streams and
extending ``link_count`` never changes earlier links.  Within one link the
draw order is fixed and documented in :func:`generate_links`.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import InvalidParameterError
from .geometry import Angles, LinkMultipath, Subpath
from .polarized import PolarizedLink, PolarizedSubpathExtras

_TWO_PI = 2.0 * math.pi


def _check_speed_range(name: str, rng_pair) -> Tuple[float, float]:
    try:
        lo, hi = (float(x) for x in rng_pair)
    except (TypeError, ValueError):
        raise InvalidParameterError(
            f"{name} must be a (low, high) pair of speeds in m/s, got {rng_pair!r}"
        ) from None
    if lo < 0.0 or hi < lo:
        raise InvalidParameterError(
            f"{name} must satisfy 0 <= low <= high, got ({lo}, {hi})"
        )
    return lo, hi


@dataclass(frozen=True)
class ScenarioConfig:
    """Knobs for a random drop.

    Angles are controlled by one spread knob per plane
    (``azimuth_spread_deg``, ``elevation_spread_deg``) that is used both for
    scattering cluster means and for scattering subpaths inside a cluster.
    Speeds are drawn uniformly from the given (low, high) ranges in m/s with
    isotropic random headings; ``(0, 0)`` pins a terminal.  The cross-polar
    knobs only matter for :func:`generate_polarized_links`.
    """

    f0: float = 3.0e9
    link_count: int = 1
    cluster_count: int = 12
    subpaths_per_cluster: int = 5
    delay_spread: float = 1.0e-7
    azimuth_spread_deg: float = 15.0
    elevation_spread_deg: float = 5.0
    power_decay: float = 1.0
    power_scale: float = 1.0
    tx_speed_range: Tuple[float, float] = (0.0, 0.0)
    rx_speed_range: Tuple[float, float] = (1.0, 1.0)
    xpr_mean_db: float = 8.0
    xpr_std_db: float = 3.0
    xpr_per_subpath: bool = True
    rng_seed: int = 0

    def __post_init__(self):
        if self.f0 <= 0.0:
            raise InvalidParameterError(
                f"carrier frequency must be positive, got {self.f0}"
            )
        for name in ("link_count", "cluster_count", "subpaths_per_cluster"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InvalidParameterError(f"{name} must be an integer >= 1, got {v!r}")
        if self.delay_spread <= 0.0:
            raise InvalidParameterError(
                f"delay spread must be positive, got {self.delay_spread}"
            )
        for name in ("azimuth_spread_deg", "elevation_spread_deg"):
            if getattr(self, name) < 0.0:
                raise InvalidParameterError(f"{name} must be >= 0")
        if self.power_decay < 0.0:
            raise InvalidParameterError(
                f"power decay must be >= 0, got {self.power_decay}"
            )
        if self.power_scale <= 0.0:
            raise InvalidParameterError(
                f"power scale must be positive, got {self.power_scale}"
            )
        object.__setattr__(
            self, "tx_speed_range", _check_speed_range("tx_speed_range", self.tx_speed_range)
        )
        object.__setattr__(
            self, "rx_speed_range", _check_speed_range("rx_speed_range", self.rx_speed_range)
        )
        if self.xpr_std_db < 0.0:
            raise InvalidParameterError(
                f"xpr_std_db must be >= 0, got {self.xpr_std_db}"
            )
        if not isinstance(self.rng_seed, int) or isinstance(self.rng_seed, bool) or self.rng_seed < 0:
            raise InvalidParameterError(
                f"rng_seed must be a non-negative integer, got {self.rng_seed!r}"
            )

    @property
    def n_subpaths(self) -> int:
        return self.cluster_count * self.subpaths_per_cluster


@dataclass(frozen=True)
class LargeScaleParams:
    """Per-link large-scale realization: spreads plus drawn velocities."""

    delay_spread: float
    azimuth_spread_deg: float
    elevation_spread_deg: float
    v_tx: Tuple[float, float, float]
    v_rx: Tuple[float, float, float]


@dataclass(frozen=True)
class ClusterParams:
    """One cluster: shared delay, total power, and mean directions."""

    delay: float
    power: float
    arrival_mean: Angles
    departure_mean: Angles


def _draw_velocity(rng: np.random.Generator, speed_range: Tuple[float, float]):
    """Isotropic heading (3 normals, normalized) times a uniform speed."""
    heading = rng.normal(size=3)
    speed = rng.uniform(*speed_range)
    norm = np.linalg.norm(heading)
    if norm == 0.0:  # pragma: no cover - probability zero
        heading, norm = np.array([1.0, 0.0, 0.0]), 1.0
    return speed * heading / norm


def _draw_large_scale(config: ScenarioConfig, rng: np.random.Generator):
    v_tx = _draw_velocity(rng, config.tx_speed_range)
    v_rx = _draw_velocity(rng, config.rx_speed_range)
    return LargeScaleParams(
        delay_spread=config.delay_spread,
        azimuth_spread_deg=config.azimuth_spread_deg,
        elevation_spread_deg=config.elevation_spread_deg,
        v_tx=tuple(v_tx),
        v_rx=tuple(v_rx),
    )


def _draw_clusters(
    config: ScenarioConfig, rng: np.random.Generator
) -> List[ClusterParams]:
    n = config.cluster_count
    delays = np.sort(rng.exponential(scale=config.delay_spread, size=n))
    weights = np.exp(-config.power_decay * delays / config.delay_spread)
    az_sigma = math.radians(config.azimuth_spread_deg)
    el_sigma = math.radians(config.elevation_spread_deg)
    az_arr = rng.normal(0.0, az_sigma, size=n)
    az_dep = rng.normal(0.0, az_sigma, size=n)
    zen_arr = math.pi / 2 + rng.normal(0.0, el_sigma, size=n)
    zen_dep = math.pi / 2 + rng.normal(0.0, el_sigma, size=n)
    return [
        ClusterParams(
            delay=float(delays[i]),
            power=float(weights[i]),
            arrival_mean=Angles(zen_arr[i], az_arr[i]),
            departure_mean=Angles(zen_dep[i], az_dep[i]),
        )
        for i in range(n)
    ]


def _draw_link(config: ScenarioConfig, rng: np.random.Generator) -> LinkMultipath:
    """One link drop from an already-positioned generator.

    Draw order (fixed): tx velocity, rx velocity, cluster delays, cluster
    azimuth means (arrival then departure), cluster zenith means (arrival
    then departure), subpath azimuth offsets (arrival then departure),
    subpath zenith offsets (arrival then departure), subpath phases.
    """
    lsp = _draw_large_scale(config, rng)
    clusters = _draw_clusters(config, rng)
    n, k = config.cluster_count, config.subpaths_per_cluster
    az_sigma = math.radians(config.azimuth_spread_deg)
    el_sigma = math.radians(config.elevation_spread_deg)
    off_az_arr = rng.normal(0.0, az_sigma, size=(n, k))
    off_az_dep = rng.normal(0.0, az_sigma, size=(n, k))
    off_zen_arr = rng.normal(0.0, el_sigma, size=(n, k))
    off_zen_dep = rng.normal(0.0, el_sigma, size=(n, k))
    phases = rng.uniform(0.0, _TWO_PI, size=n * k)

    raw_powers = np.repeat([c.power for c in clusters], k) / k
    powers = raw_powers * (config.power_scale / raw_powers.sum())

    subpaths = []
    m = 0
    for i, cluster in enumerate(clusters):
        for j in range(k):
            subpaths.append(
                Subpath(
                    power=float(powers[m]),
                    delay=cluster.delay,
                    phase=float(phases[m]),
                    arrival=Angles(
                        cluster.arrival_mean.theta + off_zen_arr[i, j],
                        cluster.arrival_mean.phi + off_az_arr[i, j],
                    ),
                    departure=Angles(
                        cluster.departure_mean.theta + off_zen_dep[i, j],
                        cluster.departure_mean.phi + off_az_dep[i, j],
                    ),
                )
            )
            m += 1
    return LinkMultipath(
        f0=config.f0,
        subpaths=tuple(subpaths),
        v_tx=np.array(lsp.v_tx),
        v_rx=np.array(lsp.v_rx),
    )


def _link_rng(config: ScenarioConfig, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([config.rng_seed, index]))


def generate_links(config: ScenarioConfig) -> List[LinkMultipath]:
    """Draw ``config.link_count`` independent links.

    Link ``i`` consumes only the substream ``SeedSequence([rng_seed, i])``,
    so regenerating with a larger ``link_count`` reproduces the earlier
    links bit for bit.  See :func:`_draw_link` for the in-link draw order.
    """
    return [_draw_link(config, _link_rng(config, i)) for i in range(config.link_count)]


def _draw_polarized_extras(
    config: ScenarioConfig, rng: np.random.Generator, n_subpaths: int
) -> Tuple[PolarizedSubpathExtras, ...]:
    """Cross-polarization draw, appended after the scalar link draw.

    Order: the four phase sets as a (4, M) uniform block in component order
    (vv, vh, hv, hh), then the inverse-XPR draw (per subpath, or one value
    shared by all subpaths when ``xpr_per_subpath`` is false).
    """
    phases = rng.uniform(0.0, _TWO_PI, size=(4, n_subpaths))
    if config.xpr_per_subpath:
        xpr_db = rng.normal(config.xpr_mean_db, config.xpr_std_db, size=n_subpaths)
    else:
        xpr_db = np.full(n_subpaths, rng.normal(config.xpr_mean_db, config.xpr_std_db))
    kappa = 10.0 ** (xpr_db / 10.0)
    return tuple(
        PolarizedSubpathExtras(
            phase_vv=float(phases[0, m]),
            phase_vh=float(phases[1, m]),
            phase_hv=float(phases[2, m]),
            phase_hh=float(phases[3, m]),
            kappa=float(kappa[m]),
        )
        for m in range(n_subpaths)
    )


def generate_polarized_links(config: ScenarioConfig) -> List[PolarizedLink]:
    """Like :func:`generate_links` plus per-subpath polarization draws.

    The scalar part of link ``i`` is drawn first, from the same substream
    and in the same order as :func:`generate_links`, so the underlying
    geometry matches the scalar drop for the same config exactly; the
    polarization extras consume the stream afterwards.
    """
    out = []
    for i in range(config.link_count):
        rng = _link_rng(config, i)
        link = _draw_link(config, rng)
        extras = _draw_polarized_extras(config, rng, link.n_subpaths)
        out.append(PolarizedLink(link=link, extras=extras))
    return out


def redraw_phases(link: LinkMultipath, rng_seed) -> LinkMultipath:
    """Same geometry, fresh i.i.d. uniform [0, 2*pi) subpath phases.

    ``rng_seed`` may be an int or a ``numpy.random.SeedSequence`` (handy for
    spawning many independent redraws).  Everything except the phases is
    shared with the input link.
    """
    rng = np.random.default_rng(rng_seed)
    phases = rng.uniform(0.0, _TWO_PI, size=link.n_subpaths)
    subpaths = tuple(
        dataclasses.replace(s, phase=float(p)) for s, p in zip(link.subpaths, phases)
    )
    return dataclasses.replace(link, subpaths=subpaths)


def redraw_polarized_phases(plink: PolarizedLink, rng_seed) -> PolarizedLink:
    """Fresh phases for all four polarization terms of every subpath.

    Draws one (4, M) uniform block in component order (vv, vh, hv, hh) --
    the same layout as the original draw -- and keeps geometry, powers and
    inverse-XPR values.  The scalar link's own phase column is untouched;
    the dual-polarized engine never reads it.
    """
    rng = np.random.default_rng(rng_seed)
    n = plink.link.n_subpaths
    phases = rng.uniform(0.0, _TWO_PI, size=(4, n))
    extras = tuple(
        dataclasses.replace(
            e,
            phase_vv=float(phases[0, m]),
            phase_vh=float(phases[1, m]),
            phase_hv=float(phases[2, m]),
            phase_hh=float(phases[3, m]),
        )
        for m, e in enumerate(plink.extras)
    )
    return dataclasses.replace(plink, extras=extras)
