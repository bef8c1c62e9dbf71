"""Modularization-quality metrics over versioned class dependency facts."""

from modquality.errors import (
    CompletenessError,
    FactFormatError,
    InvalidArgumentError,
    ModQualityError,
    NotFoundError,
    ReferentialIntegrityError,
    ValidationError,
)
from modquality.evolution import (
    DeltaTable,
    VersionPair,
    classify_delta,
    match_modules,
    scc_series,
)
from modquality.facts import (
    ClassDependencyGraph,
    InvocationEdge,
    ModuleId,
    ModuleScheme,
    SnapshotMetadata,
    SystemSnapshot,
    build_snapshot,
    class_dependency_graph,
    dumps_snapshot,
    load_snapshot,
)
from modquality.metrics import (
    afferent_coupling,
    bunch_cohesion,
    bunch_coupling_pair,
    descriptive_stats,
    efferent_coupling,
    module_coupling,
    module_metrics_table,
    system_summary,
)
from modquality.modgraph import lift_module_graph, scc_analysis

__version__ = "0.1.0"
