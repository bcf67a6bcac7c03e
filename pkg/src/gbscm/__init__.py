"""Geometry-based stochastic MIMO channel simulation.

The package builds narrowband MIMO channel matrices for randomly drawn
multipath scenarios, two ways: a direct sum over subpaths and a factorized
fast path that hoists all frequency/time-independent work into per-link
spatial matrices.  On top of the engines sit a spatial-covariance
laboratory (closed form, time-sample, and phase-ensemble estimates) and a
benchmark harness comparing the two engines.

Typical flow::

    from gbscm import ScenarioConfig, generate_links, make_ula
    from gbscm import precompute_spatial, channel_grid

    cfg = ScenarioConfig(f0=3.0e9, link_count=2, rng_seed=7)
    link = generate_links(cfg)[0]
    tx = make_ula(8, 0.5, cfg.f0)
    rx = make_ula(4, 0.5, cfg.f0)
    grid = channel_grid(precompute_spatial(link, tx, rx), [cfg.f0], [0.0])
"""

__version__ = "0.1.0"

from .antenna import (
    ArrayDescriptor,
    CosinePowerPattern,
    IsotropicPattern,
    PolarizedPattern,
    SectorPattern,
    make_ula,
    make_upa,
)
from .bench import (
    BenchCell,
    BenchConfig,
    BenchReport,
    GateResult,
    bench_scenario,
    run_bench,
    verify_equivalence_gate,
)
from .config import (
    ArraySpec,
    ConvergenceSpec,
    CovarianceSpec,
    GridSpec,
    PatternSpec,
    RunConfig,
    parse_config,
    parse_config_file,
    print_config,
)
from .covariance import (
    DEFAULT_SAMPLE_INTERVAL,
    ConvergenceRow,
    CovarianceReport,
    DopplerGram,
    convergence_experiment,
    doppler_gram,
    frequency_weights,
    sample_covariance_ensemble,
    sample_covariance_time,
    theoretical_covariance,
)
from .engine import (
    ChannelGrid,
    SpatialMatrices,
    channel_baseline,
    channel_grid,
    channel_optimized,
    precompute_spatial,
    spatial_memory_bytes,
)
from .errors import ConfigError, EquivalenceGateError, InvalidParameterError
from .geometry import (
    SPEED_OF_LIGHT,
    Angles,
    LinkMultipath,
    Subpath,
    direction_unit_vector,
    direction_unit_vectors,
    doppler_coefficient,
    wavenumber,
)
from .polarized import (
    COMPONENT_ORDER,
    PolarizedLink,
    PolarizedSpatialMatrices,
    PolarizedSubpathExtras,
    polarized_channel,
    polarized_channel_baseline,
    polarized_channel_components,
    polarized_channel_grid,
    polarized_component_grids,
    precompute_polarized,
)
from .scenario import (
    ClusterParams,
    LargeScaleParams,
    ScenarioConfig,
    generate_links,
    generate_polarized_links,
    redraw_phases,
    redraw_polarized_phases,
)

__all__ = [
    "__version__",
    # geometry
    "SPEED_OF_LIGHT",
    "Angles",
    "Subpath",
    "LinkMultipath",
    "direction_unit_vector",
    "direction_unit_vectors",
    "doppler_coefficient",
    "wavenumber",
    # antenna
    "IsotropicPattern",
    "CosinePowerPattern",
    "SectorPattern",
    "PolarizedPattern",
    "ArrayDescriptor",
    "make_ula",
    "make_upa",
    # scenario
    "ScenarioConfig",
    "LargeScaleParams",
    "ClusterParams",
    "generate_links",
    "generate_polarized_links",
    "redraw_phases",
    "redraw_polarized_phases",
    # engine
    "SpatialMatrices",
    "ChannelGrid",
    "channel_baseline",
    "precompute_spatial",
    "channel_optimized",
    "channel_grid",
    "spatial_memory_bytes",
    # polarized
    "COMPONENT_ORDER",
    "PolarizedSubpathExtras",
    "PolarizedLink",
    "PolarizedSpatialMatrices",
    "precompute_polarized",
    "polarized_channel",
    "polarized_channel_components",
    "polarized_channel_baseline",
    "polarized_channel_grid",
    "polarized_component_grids",
    # covariance
    "DEFAULT_SAMPLE_INTERVAL",
    "CovarianceReport",
    "DopplerGram",
    "ConvergenceRow",
    "doppler_gram",
    "theoretical_covariance",
    "frequency_weights",
    "sample_covariance_time",
    "sample_covariance_ensemble",
    "convergence_experiment",
    # bench
    "BenchConfig",
    "BenchCell",
    "BenchReport",
    "GateResult",
    "bench_scenario",
    "run_bench",
    "verify_equivalence_gate",
    # config
    "RunConfig",
    "ArraySpec",
    "PatternSpec",
    "GridSpec",
    "CovarianceSpec",
    "ConvergenceSpec",
    "parse_config",
    "parse_config_file",
    "print_config",
    # errors
    "InvalidParameterError",
    "ConfigError",
    "EquivalenceGateError",
]
