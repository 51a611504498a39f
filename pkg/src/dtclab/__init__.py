"""Exact numerical laboratory for discrete time crystals in driven spin chains.

The package simulates a three-layer driving cycle (global x rotation, Ising
phases, per-site disorder rotations) on chains of up to 24 spins, measures the
subharmonic response and its rigidity over disorder ensembles, and verifies
the spectral fingerprints of period doubling (pi-paired quasi-energies with
cat-like eigenstates) in dense mode.
"""

from ._version import __version__
from .config import (
    COMMANDS,
    ConfigError,
    ConfigRangeError,
    ConfigSyntaxError,
    ConfigUnknownKeyError,
    RunConfig,
    load_config,
    parse_config_file,
    parse_config_text,
    resolve_config,
)
from .evolution import (
    PowerSpectrum,
    SubharmonicMetrics,
    TimeSeries,
    aggregate_power_spectrum,
    dft_power_spectrum,
    evolve_periods,
    per_site_power,
    subharmonic_metrics,
)
from .harness import (
    ComparisonResult,
    EnsembleResult,
    RealizationMetrics,
    ScanResult,
    initial_bits,
    interaction_comparison,
    merge_ensembles,
    rigidity_scan,
    run_ensemble,
)
from .io import RunProducts, SpectrumTable, write_results
from .model import (
    CouplingSpec,
    DisorderRealization,
    FloquetCycle,
    ModelParams,
    NearestNeighborCoupling,
    PowerLawCoupling,
    apply_cycle,
    build_cycle,
    sample_disorder,
)
from .spectral import (
    CatMetrics,
    MAX_DENSE_SITES,
    SpectrumReport,
    analyze_cycle,
    cat_metrics,
    fill_cat_metrics,
    floquet_operator_dense,
    pairing_defect,
    quasi_energies,
)
from .statevec import (
    MAX_SITES,
    SpinState,
    all_sigma_z,
    apply_diagonal_phase,
    apply_single_site_rotation,
    expectation_sigma_z,
    inner_product,
    new_basis_state,
    rotation_matrix,
)

__all__ = [
    "__version__",
    "COMMANDS",
    "ConfigError",
    "ConfigRangeError",
    "ConfigSyntaxError",
    "ConfigUnknownKeyError",
    "RunConfig",
    "load_config",
    "parse_config_file",
    "parse_config_text",
    "resolve_config",
    "PowerSpectrum",
    "SubharmonicMetrics",
    "TimeSeries",
    "aggregate_power_spectrum",
    "dft_power_spectrum",
    "evolve_periods",
    "per_site_power",
    "subharmonic_metrics",
    "ComparisonResult",
    "EnsembleResult",
    "RealizationMetrics",
    "ScanResult",
    "initial_bits",
    "interaction_comparison",
    "merge_ensembles",
    "rigidity_scan",
    "run_ensemble",
    "RunProducts",
    "SpectrumTable",
    "write_results",
    "CouplingSpec",
    "DisorderRealization",
    "FloquetCycle",
    "ModelParams",
    "NearestNeighborCoupling",
    "PowerLawCoupling",
    "apply_cycle",
    "build_cycle",
    "sample_disorder",
    "CatMetrics",
    "MAX_DENSE_SITES",
    "SpectrumReport",
    "analyze_cycle",
    "cat_metrics",
    "fill_cat_metrics",
    "floquet_operator_dense",
    "pairing_defect",
    "quasi_energies",
    "MAX_SITES",
    "SpinState",
    "all_sigma_z",
    "apply_diagonal_phase",
    "apply_single_site_rotation",
    "expectation_sigma_z",
    "inner_product",
    "new_basis_state",
    "rotation_matrix",
]
