"""Cross-version comparison: module matching, increase/same/decrease tallies,
and SCC series over successive versions."""

from __future__ import annotations

from dataclasses import dataclass, field

from modquality.errors import InvalidArgumentError, ValidationError
from modquality.facts import ModuleId, SystemSnapshot, class_dependency_graph
from modquality.metrics import METRIC_NAMES, ModuleMetricsRow, module_metrics_table
from modquality.modgraph import lift_module_graph, scc_analysis

# used only when one side of a comparison is a float
FLOAT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class VersionPair:
    before: SystemSnapshot
    after: SystemSnapshot

    def __post_init__(self) -> None:
        if self.before.version == self.after.version:
            raise ValidationError(
                f"a version pair needs distinct labels, got {self.before.version!r} twice"
            )

    @property
    def label(self) -> str:
        return f"{self.before.version}→{self.after.version}"


@dataclass(frozen=True)
class DeltaTable:
    scheme: str
    metric: str
    increased: int
    same: int
    decreased: int
    created: tuple[ModuleId, ...] = field(default=())
    removed: tuple[ModuleId, ...] = field(default=())

    @property
    def matched(self) -> int:
        return self.increased + self.same + self.decreased


def match_modules(p: VersionPair, scheme_name: str):
    """Return ``(matched, created, removed)``; matching is by module name.

    ``matched`` is a list of ``(before_id, after_id)`` pairs sorted by name.
    """
    before = set(p.before.scheme(scheme_name).modules)
    after = set(p.after.scheme(scheme_name).modules)
    matched = [(ModuleId(scheme_name, m), ModuleId(scheme_name, m)) for m in sorted(before & after)]
    created = [ModuleId(scheme_name, m) for m in sorted(after - before)]
    removed = [ModuleId(scheme_name, m) for m in sorted(before - after)]
    return matched, created, removed


def compare_values(old, new) -> int:
    """-1, 0 or +1 for decrease, same, increase."""
    if isinstance(old, float) or isinstance(new, float):
        if abs(float(new) - float(old)) <= FLOAT_TOLERANCE:
            return 0
    elif new == old:
        return 0
    return 1 if new > old else -1


def delta_from_rows(
    before: list[ModuleMetricsRow], after: list[ModuleMetricsRow], metric: str
) -> DeltaTable:
    """Tally one metric over two precomputed tables of the same scheme."""
    if metric not in METRIC_NAMES:
        raise InvalidArgumentError(f"unknown metric {metric!r}; expected one of {METRIC_NAMES}")
    old = {r.module.name: r for r in before}
    new = {r.module.name: r for r in after}
    schemes = {r.scheme for r in before} | {r.scheme for r in after}
    if len(schemes) > 1:
        raise InvalidArgumentError(f"rows mix schemes {sorted(schemes)}")
    scheme = schemes.pop() if schemes else ""
    tally = {-1: 0, 0: 0, 1: 0}
    for name in sorted(old.keys() & new.keys()):
        tally[compare_values(old[name].value(metric), new[name].value(metric))] += 1
    return DeltaTable(
        scheme=scheme,
        metric=metric,
        increased=tally[1],
        same=tally[0],
        decreased=tally[-1],
        created=tuple(ModuleId(scheme, m) for m in sorted(new.keys() - old.keys())),
        removed=tuple(ModuleId(scheme, m) for m in sorted(old.keys() - new.keys())),
    )


def classify_delta(p: VersionPair, scheme_name: str, metric: str) -> DeltaTable:
    if metric not in METRIC_NAMES:
        raise InvalidArgumentError(f"unknown metric {metric!r}; expected one of {METRIC_NAMES}")
    before = module_metrics_table(p.before, scheme_name)
    after = module_metrics_table(p.after, scheme_name)
    return delta_from_rows(before, after, metric)


def scc_series(snapshots: list[SystemSnapshot], scheme_name: str) -> list[tuple[str, int, int]]:
    """``(version, number of cyclic SCCs, largest SCC size)`` per snapshot, input order."""
    if not snapshots:
        raise InvalidArgumentError("scc_series needs at least one snapshot")
    rows = []
    for s in snapshots:
        report = scc_analysis(lift_module_graph(class_dependency_graph(s), s.scheme(scheme_name)))
        rows.append((s.version, report.num_nontrivial_scc, report.largest_scc_size))
    return rows

