"""Heralded single-photon statistics of pulsed PDC sources."""

from ._core import (
    BudgetExceeded,
    ConfigError,
    DegenerateHerald,
    DetectorModel,
    Error,
    FrontierPoint,
    HeraldReport,
    Infeasible,
    JointTruncation,
    ModeDistribution,
    ModeTailTooHeavy,
    MultimodeHeraldReport,
    OptimalPoint,
    OracleResult,
    PhotonDistribution,
    TruncationCapExceeded,
    TruncationPolicy,
    UnreachableTarget,
    UnsupportedFamily,
    adaptive_cutoff,
    binary_click,
    binary_noclick,
    build_modes,
    build_modes_auto,
    closed_form_report,
    completeness_defect,
    custom_detector,
    frontier,
    herald_report,
    heralded_state,
    heralding_probability,
    mean_photon_number,
    mu_from_schmidt,
    multimode_frontier,
    multimode_herald,
    optimal_r,
    oracle_multimode,
    oracle_single_mode,
    pair_parameter,
    pnr,
    schmidt_number,
    single_photon_fidelity,
    sources_needed,
    squeezing_db,
    switched_probability,
    thermal_distribution,
    total_photon_distribution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
