"""Hierarchical planar segmentation by dual ultrametric rounding.

Thin bindings over the C++ core: planar graphs and instances, the exact
planar cut oracle, the cutting-plane solver, the agglomerative baseline and
the exhaustive reference solvers in ``ultraplanar.oracles``.
"""

from ._core import (
    Instance,
    LevelSchedule,
    PlanarGraph,
    SolveReport,
    SolverConfig,
    TauMode,
    UltraplanarError,
    baseline,
    gen_grid,
    gen_random,
    hierarchy_cost,
    independent_layers,
    min_weight_cut,
    min_weight_perfect_matching,
    oracles,
    planted_hierarchy,
    solve,
    summary_json,
)

__all__ = [
    "Instance",
    "LevelSchedule",
    "PlanarGraph",
    "SolveReport",
    "SolverConfig",
    "TauMode",
    "UltraplanarError",
    "baseline",
    "gen_grid",
    "gen_random",
    "hierarchy_cost",
    "independent_layers",
    "min_weight_cut",
    "min_weight_perfect_matching",
    "oracles",
    "planted_hierarchy",
    "solve",
    "summary_json",
]
