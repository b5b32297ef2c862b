"""Rational agents under Sybil duplication: simulator and exact analysis."""

from ._core import (
    Error,
    InvalidScheme,
    InvalidTopology,
    Prior,
    RunawayProtocol,
    SchemaError,
    Topology,
    UnsupportedQuery,
    best_duplication,
    build_ring,
    empirical_eu,
    exact_eu,
    ks_cheater_eu,
    ks_equilibrium,
    le_cheater_eu,
    le_equilibrium,
    le_honest_eu,
    random_two_connected,
    ring_coloring_bound,
    run_adaptive_duplication,
    run_command,
    run_honest,
    run_ks_sybil,
    run_le_sybil,
    thresholds_report,
    verify_two_connected,
)

__all__ = [name for name in dir() if not name.startswith("_")]
