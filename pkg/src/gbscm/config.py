"""YAML run configuration: parsing, validation, canonical echo.

The schema is strict: every key has a default, unknown keys are hard
errors, and values are type-checked with errors that name the offending
key.  ``print_config`` emits the fully materialized document (every
default spelled out) in a canonical order, and
``parse_config(print_config(cfg)) == cfg`` holds exactly -- floats are
dumped via ``repr`` so they round-trip bit for bit.

YAML 1.1 quirk: scientific notation without a signed exponent (``3.0e9``)
loads as a *string*; numeric fields here accept such strings so configs
can use either spelling.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import yaml

from .antenna import (
    ArrayDescriptor,
    CosinePowerPattern,
    IsotropicPattern,
    PolarizedPattern,
    SectorPattern,
    make_ula,
    make_upa,
)
from .bench import BenchConfig
from .covariance import DEFAULT_SAMPLE_INTERVAL
from .errors import ConfigError, InvalidParameterError
from .geometry import Angles
from .scenario import ScenarioConfig

# ---------------------------------------------------------------------------
# value coercion helpers (all errors name the exact key path)


def _fail(path: str, problem: str):
    raise ConfigError(path, problem)


def _as_float(path: str, v) -> float:
    if isinstance(v, bool):
        _fail(path, f"must be a number, got {v!r}")
    if isinstance(v, str):
        # YAML 1.1 resolves exponent floats without a signed exponent
        # (e.g. ``3.0e9``) as strings; accept anything that parses cleanly.
        try:
            v = float(v)
        except ValueError:
            _fail(path, f"must be a number, got {v!r}")
    if not isinstance(v, (int, float)):
        _fail(path, f"must be a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        _fail(path, f"must be finite, got {v!r}")
    return v


def _as_positive_float(path: str, v) -> float:
    v = _as_float(path, v)
    if v <= 0.0:
        _fail(path, f"must be > 0, got {v}")
    return v


def _as_nonneg_float(path: str, v) -> float:
    v = _as_float(path, v)
    if v < 0.0:
        _fail(path, f"must be >= 0, got {v}")
    return v


def _as_int(path: str, v, minimum: Optional[int] = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        _fail(path, f"must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        _fail(path, f"must be >= {minimum}, got {v}")
    return v


def _as_bool(path: str, v) -> bool:
    if not isinstance(v, bool):
        _fail(path, f"must be true or false, got {v!r}")
    return v


def _as_choice(path: str, v, choices) -> str:
    if not isinstance(v, str) or v not in choices:
        _fail(path, f"must be one of {sorted(choices)}, got {v!r}")
    return v


def _as_float_pair(path: str, v) -> Tuple[float, float]:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        _fail(path, f"must be a [low, high] pair, got {v!r}")
    return (_as_float(f"{path}[0]", v[0]), _as_float(f"{path}[1]", v[1]))


def _as_float_triple(path: str, v) -> Tuple[float, float, float]:
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        _fail(path, f"must be an [x, y, z] triple, got {v!r}")
    return tuple(_as_float(f"{path}[{i}]", x) for i, x in enumerate(v))


def _as_float_list(path: str, v) -> Tuple[float, ...]:
    if not isinstance(v, (list, tuple)) or not v:
        _fail(path, f"must be a non-empty list of numbers, got {v!r}")
    return tuple(_as_float(f"{path}[{i}]", x) for i, x in enumerate(v))


def _as_int_list(path: str, v, minimum: int = 1) -> Tuple[int, ...]:
    if not isinstance(v, (list, tuple)) or not v:
        _fail(path, f"must be a non-empty list of integers, got {v!r}")
    return tuple(_as_int(f"{path}[{i}]", x, minimum) for i, x in enumerate(v))


def _section(path: str, v) -> dict:
    if v is None:
        return {}
    if not isinstance(v, dict):
        _fail(path, f"must be a mapping, got {v!r}")
    return dict(v)


def _no_extras(path: str, d: dict):
    if d:
        key = sorted(str(k) for k in d)[0]
        full = f"{path}.{key}" if path else key
        _fail(full, "unknown key")


# ---------------------------------------------------------------------------
# sections


@dataclass(frozen=True)
class PatternSpec:
    """Element-pattern description as it appears in a config file."""

    kind: str = "isotropic"
    exponent: Optional[float] = None
    boresight_zenith_deg: Optional[float] = None
    boresight_azimuth_deg: Optional[float] = None
    az_beamwidth_deg: Optional[float] = None
    el_beamwidth_deg: Optional[float] = None
    max_attenuation_db: Optional[float] = None
    peak_gain_dbi: Optional[float] = None
    vertical: Optional["PatternSpec"] = None
    horizontal: Optional["PatternSpec"] = None

    def build(self):
        """Construct the pattern object this spec describes."""
        if self.kind == "isotropic":
            return IsotropicPattern()
        if self.kind == "cosine-power":
            return CosinePowerPattern(
                exponent=self.exponent,
                boresight=Angles(
                    math.radians(self.boresight_zenith_deg),
                    math.radians(self.boresight_azimuth_deg),
                ),
                peak_amplitude=10.0 ** (self.peak_gain_dbi / 20.0),
            )
        if self.kind == "sector":
            return SectorPattern(
                az_beamwidth_deg=self.az_beamwidth_deg,
                el_beamwidth_deg=self.el_beamwidth_deg,
                max_attenuation_db=self.max_attenuation_db,
                peak_amplitude=10.0 ** (self.peak_gain_dbi / 20.0),
            )
        return PolarizedPattern(self.vertical.build(), self.horizontal.build())

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "cosine-power":
            out.update(
                exponent=self.exponent,
                boresight_zenith_deg=self.boresight_zenith_deg,
                boresight_azimuth_deg=self.boresight_azimuth_deg,
                peak_gain_dbi=self.peak_gain_dbi,
            )
        elif self.kind == "sector":
            out.update(
                az_beamwidth_deg=self.az_beamwidth_deg,
                el_beamwidth_deg=self.el_beamwidth_deg,
                max_attenuation_db=self.max_attenuation_db,
                peak_gain_dbi=self.peak_gain_dbi,
            )
        elif self.kind == "polarized":
            out["vertical"] = self.vertical.to_dict()
            out["horizontal"] = self.horizontal.to_dict()
        return out


def _parse_pattern(path: str, raw, allow_polarized: bool = True) -> PatternSpec:
    d = _section(path, raw)
    kinds = {"isotropic", "cosine-power", "sector"}
    if allow_polarized:
        kinds.add("polarized")
    kind = _as_choice(f"{path}.kind", d.pop("kind", "isotropic"), kinds)
    if kind == "isotropic":
        _no_extras(path, d)
        return PatternSpec(kind=kind)
    if kind == "cosine-power":
        spec = PatternSpec(
            kind=kind,
            exponent=_as_positive_float(f"{path}.exponent", d.pop("exponent", 1.0)),
            boresight_zenith_deg=_as_float(
                f"{path}.boresight_zenith_deg", d.pop("boresight_zenith_deg", 90.0)
            ),
            boresight_azimuth_deg=_as_float(
                f"{path}.boresight_azimuth_deg", d.pop("boresight_azimuth_deg", 0.0)
            ),
            peak_gain_dbi=_as_float(
                f"{path}.peak_gain_dbi", d.pop("peak_gain_dbi", 0.0)
            ),
        )
        _no_extras(path, d)
        return spec
    if kind == "sector":
        spec = PatternSpec(
            kind=kind,
            az_beamwidth_deg=_as_positive_float(
                f"{path}.az_beamwidth_deg", d.pop("az_beamwidth_deg", 65.0)
            ),
            el_beamwidth_deg=_as_positive_float(
                f"{path}.el_beamwidth_deg", d.pop("el_beamwidth_deg", 65.0)
            ),
            max_attenuation_db=_as_positive_float(
                f"{path}.max_attenuation_db", d.pop("max_attenuation_db", 30.0)
            ),
            peak_gain_dbi=_as_float(
                f"{path}.peak_gain_dbi", d.pop("peak_gain_dbi", 0.0)
            ),
        )
        _no_extras(path, d)
        return spec
    vertical = _parse_pattern(
        f"{path}.vertical", d.pop("vertical", None), allow_polarized=False
    )
    horizontal = _parse_pattern(
        f"{path}.horizontal", d.pop("horizontal", None), allow_polarized=False
    )
    _no_extras(path, d)
    return PatternSpec(kind=kind, vertical=vertical, horizontal=horizontal)


@dataclass(frozen=True)
class ArraySpec:
    """Antenna-array description as it appears in a config file."""

    kind: str = "ula"
    count: Optional[int] = 8
    rows: Optional[int] = None
    cols: Optional[int] = None
    spacing_wavelengths: float = 0.5
    axis: Optional[Tuple[float, float, float]] = (0.0, 1.0, 0.0)
    pattern: PatternSpec = field(default_factory=PatternSpec)

    @property
    def n_elements(self) -> int:
        return self.count if self.kind == "ula" else self.rows * self.cols

    def build(self, f0: float) -> ArrayDescriptor:
        pattern = self.pattern.build()
        if self.kind == "ula":
            return make_ula(
                self.count, self.spacing_wavelengths, f0, axis=self.axis, pattern=pattern
            )
        return make_upa(self.rows, self.cols, self.spacing_wavelengths, f0, pattern=pattern)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "ula":
            out["count"] = self.count
            out["axis"] = list(self.axis)
        else:
            out["rows"] = self.rows
            out["cols"] = self.cols
        out["spacing_wavelengths"] = self.spacing_wavelengths
        out["pattern"] = self.pattern.to_dict()
        return out


def _parse_array(path: str, raw, default_count: int = 8) -> ArraySpec:
    d = _section(path, raw)
    kind = _as_choice(f"{path}.kind", d.pop("kind", "ula"), {"ula", "upa"})
    pattern = _parse_pattern(f"{path}.pattern", d.pop("pattern", None))
    spacing = _as_positive_float(
        f"{path}.spacing_wavelengths", d.pop("spacing_wavelengths", 0.5)
    )
    if kind == "ula":
        spec = ArraySpec(
            kind=kind,
            count=_as_int(f"{path}.count", d.pop("count", default_count), minimum=1),
            rows=None,
            cols=None,
            spacing_wavelengths=spacing,
            axis=_as_float_triple(f"{path}.axis", d.pop("axis", [0.0, 1.0, 0.0])),
            pattern=pattern,
        )
    else:
        spec = ArraySpec(
            kind=kind,
            count=None,
            rows=_as_int(f"{path}.rows", d.pop("rows", 2), minimum=1),
            cols=_as_int(f"{path}.cols", d.pop("cols", 2), minimum=1),
            spacing_wavelengths=spacing,
            axis=None,
            pattern=pattern,
        )
    _no_extras(path, d)
    return spec


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid: times as count+step or an explicit list; frequencies
    as count+spacing centered on the carrier, or an explicit absolute list."""

    time_count: int = 1
    time_step: float = 1.0e-3
    times: Optional[Tuple[float, ...]] = None
    freq_count: int = 12
    freq_spacing: float = 15.0e3
    freqs: Optional[Tuple[float, ...]] = None

    def resolve_times(self) -> np.ndarray:
        if self.times is not None:
            return np.asarray(self.times, dtype=float)
        return np.arange(self.time_count) * self.time_step

    def resolve_freqs(self, f0: float) -> np.ndarray:
        if self.freqs is not None:
            return np.asarray(self.freqs, dtype=float)
        n = self.freq_count
        return f0 + self.freq_spacing * (np.arange(n) - (n - 1) / 2.0)

    def to_dict(self) -> dict:
        return {
            "time_count": self.time_count,
            "time_step": self.time_step,
            "times": None if self.times is None else list(self.times),
            "freq_count": self.freq_count,
            "freq_spacing": self.freq_spacing,
            "freqs": None if self.freqs is None else list(self.freqs),
        }


def _parse_grid(path: str, raw) -> GridSpec:
    d = _section(path, raw)
    times = d.pop("times", None)
    freqs = d.pop("freqs", None)
    spec = GridSpec(
        time_count=_as_int(f"{path}.time_count", d.pop("time_count", 1), minimum=1),
        time_step=_as_positive_float(f"{path}.time_step", d.pop("time_step", 1.0e-3)),
        times=None if times is None else _as_float_list(f"{path}.times", times),
        freq_count=_as_int(f"{path}.freq_count", d.pop("freq_count", 12), minimum=1),
        freq_spacing=_as_positive_float(
            f"{path}.freq_spacing", d.pop("freq_spacing", 15.0e3)
        ),
        freqs=None if freqs is None else _as_float_list(f"{path}.freqs", freqs),
    )
    _no_extras(path, d)
    return spec


@dataclass(frozen=True)
class CovarianceSpec:
    """Settings for the ``covariance`` subcommand."""

    link_index: int = 0
    time_samples: int = 1000
    n_draws: int = 10000
    nu_tolerance: float = 1.0e-12
    sample_interval: float = DEFAULT_SAMPLE_INTERVAL

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _parse_covariance(path: str, raw) -> CovarianceSpec:
    d = _section(path, raw)
    spec = CovarianceSpec(
        link_index=_as_int(f"{path}.link_index", d.pop("link_index", 0), minimum=0),
        time_samples=_as_int(
            f"{path}.time_samples", d.pop("time_samples", 1000), minimum=1
        ),
        n_draws=_as_int(f"{path}.n_draws", d.pop("n_draws", 10000), minimum=1),
        nu_tolerance=_as_nonneg_float(
            f"{path}.nu_tolerance", d.pop("nu_tolerance", 1.0e-12)
        ),
        sample_interval=_as_positive_float(
            f"{path}.sample_interval", d.pop("sample_interval", DEFAULT_SAMPLE_INTERVAL)
        ),
    )
    _no_extras(path, d)
    return spec


@dataclass(frozen=True)
class ConvergenceSpec:
    """Settings for the ``convergence`` subcommand."""

    horizons: Tuple[int, ...] = (10, 100, 1000, 10000)
    n_draws_list: Tuple[int, ...] = (10, 100, 1000, 10000)
    sample_interval: float = DEFAULT_SAMPLE_INTERVAL

    def to_dict(self) -> dict:
        return {
            "horizons": list(self.horizons),
            "n_draws_list": list(self.n_draws_list),
            "sample_interval": self.sample_interval,
        }


def _parse_convergence(path: str, raw) -> ConvergenceSpec:
    d = _section(path, raw)
    spec = ConvergenceSpec(
        horizons=_as_int_list(
            f"{path}.horizons", d.pop("horizons", [10, 100, 1000, 10000])
        ),
        n_draws_list=_as_int_list(
            f"{path}.n_draws_list", d.pop("n_draws_list", [10, 100, 1000, 10000])
        ),
        sample_interval=_as_positive_float(
            f"{path}.sample_interval", d.pop("sample_interval", DEFAULT_SAMPLE_INTERVAL)
        ),
    )
    _no_extras(path, d)
    return spec


_SCENARIO_DEFAULTS = ScenarioConfig()


def _parse_scenario(path: str, raw, f0: float, seed: int) -> ScenarioConfig:
    d = _section(path, raw)
    kwargs = dict(
        link_count=_as_int(
            f"{path}.link_count", d.pop("link_count", _SCENARIO_DEFAULTS.link_count), 1
        ),
        cluster_count=_as_int(
            f"{path}.cluster_count",
            d.pop("cluster_count", _SCENARIO_DEFAULTS.cluster_count),
            1,
        ),
        subpaths_per_cluster=_as_int(
            f"{path}.subpaths_per_cluster",
            d.pop("subpaths_per_cluster", _SCENARIO_DEFAULTS.subpaths_per_cluster),
            1,
        ),
        delay_spread=_as_positive_float(
            f"{path}.delay_spread", d.pop("delay_spread", _SCENARIO_DEFAULTS.delay_spread)
        ),
        azimuth_spread_deg=_as_nonneg_float(
            f"{path}.azimuth_spread_deg",
            d.pop("azimuth_spread_deg", _SCENARIO_DEFAULTS.azimuth_spread_deg),
        ),
        elevation_spread_deg=_as_nonneg_float(
            f"{path}.elevation_spread_deg",
            d.pop("elevation_spread_deg", _SCENARIO_DEFAULTS.elevation_spread_deg),
        ),
        power_decay=_as_nonneg_float(
            f"{path}.power_decay", d.pop("power_decay", _SCENARIO_DEFAULTS.power_decay)
        ),
        power_scale=_as_positive_float(
            f"{path}.power_scale", d.pop("power_scale", _SCENARIO_DEFAULTS.power_scale)
        ),
        tx_speed_range=_as_float_pair(
            f"{path}.tx_speed_range",
            d.pop("tx_speed_range", list(_SCENARIO_DEFAULTS.tx_speed_range)),
        ),
        rx_speed_range=_as_float_pair(
            f"{path}.rx_speed_range",
            d.pop("rx_speed_range", list(_SCENARIO_DEFAULTS.rx_speed_range)),
        ),
        xpr_mean_db=_as_float(
            f"{path}.xpr_mean_db", d.pop("xpr_mean_db", _SCENARIO_DEFAULTS.xpr_mean_db)
        ),
        xpr_std_db=_as_nonneg_float(
            f"{path}.xpr_std_db", d.pop("xpr_std_db", _SCENARIO_DEFAULTS.xpr_std_db)
        ),
        xpr_per_subpath=_as_bool(
            f"{path}.xpr_per_subpath",
            d.pop("xpr_per_subpath", _SCENARIO_DEFAULTS.xpr_per_subpath),
        ),
    )
    _no_extras(path, d)
    try:
        return ScenarioConfig(f0=f0, rng_seed=seed, **kwargs)
    except InvalidParameterError as exc:
        raise ConfigError(path, str(exc)) from exc


def _parse_bench(path: str, raw, f0: float, seed: int) -> BenchConfig:
    d = _section(path, raw)
    defaults = BenchConfig()
    kwargs = dict(
        tx_antenna_sweep=_as_int_list(
            f"{path}.tx_antenna_sweep",
            d.pop("tx_antenna_sweep", list(defaults.tx_antenna_sweep)),
        ),
        freq_point_sweep=_as_int_list(
            f"{path}.freq_point_sweep",
            d.pop("freq_point_sweep", list(defaults.freq_point_sweep)),
        ),
        rx_antennas=_as_int(
            f"{path}.rx_antennas", d.pop("rx_antennas", defaults.rx_antennas), 1
        ),
        links=_as_int(f"{path}.links", d.pop("links", defaults.links), 1),
        subpaths=_as_int(f"{path}.subpaths", d.pop("subpaths", defaults.subpaths), 1),
        repetitions=_as_int(
            f"{path}.repetitions", d.pop("repetitions", defaults.repetitions), 3
        ),
        warmup=_as_int(f"{path}.warmup", d.pop("warmup", defaults.warmup), 0),
    )
    _no_extras(path, d)
    try:
        return BenchConfig(f0=f0, seed=seed, **kwargs)
    except InvalidParameterError as exc:
        raise ConfigError(path, str(exc)) from exc


# ---------------------------------------------------------------------------
# the full run configuration


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run needs, with all defaults materialized."""

    f0: float = 3.0e9
    seed: int = 0
    engine: str = "scalar"
    emit_components: bool = False
    out_dir: Optional[str] = None
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    tx_array: ArraySpec = field(default_factory=ArraySpec)
    rx_array: ArraySpec = field(default_factory=lambda: ArraySpec(count=4))
    grid: GridSpec = field(default_factory=GridSpec)
    covariance: CovarianceSpec = field(default_factory=CovarianceSpec)
    convergence: ConvergenceSpec = field(default_factory=ConvergenceSpec)
    bench: BenchConfig = field(default_factory=BenchConfig)

    def with_seed(self, seed: int) -> "RunConfig":
        """A copy with the seed replaced everywhere it is embedded."""
        return dataclasses.replace(
            self,
            seed=seed,
            scenario=dataclasses.replace(self.scenario, rng_seed=seed),
            bench=dataclasses.replace(self.bench, seed=seed),
        )


def parse_config(text: Optional[str]) -> RunConfig:
    """Parse and fully validate a YAML config document.

    ``None`` or an empty document yields the all-defaults config.  Raises
    :class:`~gbscm.errors.ConfigError` naming the first offending key on
    any unknown key, type mismatch, or constraint violation.
    """
    try:
        raw = yaml.safe_load(text) if text else None
    except yaml.YAMLError as exc:
        raise ConfigError("<document>", f"not valid YAML: {exc}") from exc
    d = _section("<document>", raw) if raw is not None else {}
    f0 = _as_positive_float("f0", d.pop("f0", 3.0e9))
    seed = _as_int("seed", d.pop("seed", 0), minimum=0)
    engine = _as_choice("engine", d.pop("engine", "scalar"), {"scalar", "polarized"})
    emit_components = _as_bool("emit_components", d.pop("emit_components", False))
    out_dir = d.pop("out_dir", None)
    if out_dir is not None and not isinstance(out_dir, str):
        _fail("out_dir", f"must be a string path, got {out_dir!r}")
    scenario = _parse_scenario("scenario", d.pop("scenario", None), f0, seed)
    tx_array = _parse_array("tx_array", d.pop("tx_array", None), default_count=8)
    rx_array = _parse_array("rx_array", d.pop("rx_array", None), default_count=4)
    grid = _parse_grid("grid", d.pop("grid", None))
    covariance = _parse_covariance("covariance", d.pop("covariance", None))
    convergence = _parse_convergence("convergence", d.pop("convergence", None))
    bench = _parse_bench("bench", d.pop("bench", None), f0, seed)
    _no_extras("", d)

    for name, spec in (("tx_array", tx_array), ("rx_array", rx_array)):
        polarized = spec.pattern.kind == "polarized"
        if engine == "polarized" and not polarized:
            _fail(
                f"{name}.pattern.kind",
                "the polarized engine needs pattern kind 'polarized' on both arrays",
            )
        if engine == "scalar" and polarized:
            _fail(
                f"{name}.pattern.kind",
                "pattern kind 'polarized' requires engine: polarized",
            )
    if covariance.link_index >= scenario.link_count:
        _fail(
            "covariance.link_index",
            f"must be < scenario.link_count ({scenario.link_count}), "
            f"got {covariance.link_index}",
        )
    return RunConfig(
        f0=f0,
        seed=seed,
        engine=engine,
        emit_components=emit_components,
        out_dir=out_dir,
        scenario=scenario,
        tx_array=tx_array,
        rx_array=rx_array,
        grid=grid,
        covariance=covariance,
        convergence=convergence,
        bench=bench,
    )


def parse_config_file(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("<config file>", f"cannot read {path}: {exc}") from exc
    return parse_config(text)


def _scenario_to_dict(sc: ScenarioConfig) -> dict:
    return {
        "link_count": sc.link_count,
        "cluster_count": sc.cluster_count,
        "subpaths_per_cluster": sc.subpaths_per_cluster,
        "delay_spread": sc.delay_spread,
        "azimuth_spread_deg": sc.azimuth_spread_deg,
        "elevation_spread_deg": sc.elevation_spread_deg,
        "power_decay": sc.power_decay,
        "power_scale": sc.power_scale,
        "tx_speed_range": list(sc.tx_speed_range),
        "rx_speed_range": list(sc.rx_speed_range),
        "xpr_mean_db": sc.xpr_mean_db,
        "xpr_std_db": sc.xpr_std_db,
        "xpr_per_subpath": sc.xpr_per_subpath,
    }


def _bench_to_dict(b: BenchConfig) -> dict:
    return {
        "tx_antenna_sweep": list(b.tx_antenna_sweep),
        "freq_point_sweep": list(b.freq_point_sweep),
        "rx_antennas": b.rx_antennas,
        "links": b.links,
        "subpaths": b.subpaths,
        "repetitions": b.repetitions,
        "warmup": b.warmup,
    }


def config_to_dict(cfg: RunConfig) -> dict:
    """The canonical plain-data form of a config (used by the manifest)."""
    return {
        "f0": cfg.f0,
        "seed": cfg.seed,
        "engine": cfg.engine,
        "emit_components": cfg.emit_components,
        "out_dir": cfg.out_dir,
        "scenario": _scenario_to_dict(cfg.scenario),
        "tx_array": cfg.tx_array.to_dict(),
        "rx_array": cfg.rx_array.to_dict(),
        "grid": cfg.grid.to_dict(),
        "covariance": cfg.covariance.to_dict(),
        "convergence": cfg.convergence.to_dict(),
        "bench": _bench_to_dict(cfg.bench),
    }


def print_config(cfg: RunConfig) -> str:
    """Canonical YAML echo with every default materialized.

    ``parse_config(print_config(cfg)) == cfg`` exactly: floats are emitted
    with full round-trip precision.
    """
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False)
