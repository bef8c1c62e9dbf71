"""Bunch cohesion/coupling, afferent/efferent coupling and descriptive statistics.

All real-valued metrics are returned as :class:`fractions.Fraction` so that
"unchanged between versions" can be decided exactly; call ``float()`` at the
edge if you need floats.

Definitions, for a module ``i`` with ``N_i`` classes under some scheme:

* cohesion ``A_i = mu_i / N_i**2`` where ``mu_i`` counts dependency edges with
  both ends in ``i``. Self-dependencies are not edges, so the largest
  attainable value is ``(N_i - 1) / N_i``.
* pair coupling ``E_ij = eps_ij / (2 N_i N_j)`` where ``eps_ij`` counts the
  dependency edges between ``i`` and ``j`` in *both* directions, hence
  ``E_ij == E_ji`` and ``0 <= E_ij <= 1``.
* module coupling ``E_i`` is the sum of ``E_ij`` over every other module
  ``j``. (The commonly printed form sums ``A_ij``; that is read as ``E_ij``.)
* ``Ca_i``: distinct classes outside ``i`` that depend on some class of ``i``.
* ``Ce_i``: distinct classes outside ``i`` that some class of ``i`` depends on.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from modquality.errors import InvalidArgumentError
from modquality.facts import (
    ClassDependencyGraph,
    ModuleId,
    ModuleScheme,
    SystemSnapshot,
    class_dependency_graph,
)


@dataclass(frozen=True)
class ModuleMetricsRow:
    module: ModuleId
    class_count: int
    cohesion: Fraction
    coupling: Fraction
    ca: int
    ce: int
    intra_edges: int

    @property
    def scheme(self) -> str:
        return self.module.scheme

    def value(self, metric: str):
        if metric not in METRIC_NAMES:
            raise InvalidArgumentError(f"unknown metric {metric!r}; expected one of {METRIC_NAMES}")
        return getattr(self, metric)


METRIC_NAMES = ("cohesion", "coupling", "ca", "ce")


@dataclass(frozen=True)
class SystemMetricsSummary:
    scheme: str
    module_count: int
    avg_cohesion: Fraction
    avg_coupling: Fraction


@dataclass(frozen=True)
class DescriptiveStats:
    version_label: str
    num_modules_per_scheme: dict[str, int]
    num_classes: int
    num_methods: int | None
    lines_of_code: int | None
    num_invocations: int


def _check_module(scheme: ModuleScheme, m: str) -> int:
    return len(scheme.classes_of(m))  # raises NotFoundError


def intra_edge_count(g: ClassDependencyGraph, scheme: ModuleScheme, m: str) -> int:
    _check_module(scheme, m)
    return sum(1 for u, v in g.edges if scheme.module_of(u) == m and scheme.module_of(v) == m)


def inter_edge_count(g: ClassDependencyGraph, scheme: ModuleScheme, i: str, j: str) -> int:
    """Dependency edges between modules i and j, both directions."""
    _check_module(scheme, i)
    _check_module(scheme, j)
    if i == j:
        raise InvalidArgumentError(f"pair coupling needs two distinct modules, got {i!r} twice")
    return sum(
        1 for u, v in g.edges if {scheme.module_of(u), scheme.module_of(v)} == {i, j}
    )


def bunch_cohesion(g: ClassDependencyGraph, scheme: ModuleScheme, m: str) -> Fraction:
    n = _check_module(scheme, m)
    return Fraction(intra_edge_count(g, scheme, m), n * n)


def bunch_coupling_pair(g: ClassDependencyGraph, scheme: ModuleScheme, i: str, j: str) -> Fraction:
    eps = inter_edge_count(g, scheme, i, j)
    return Fraction(eps, 2 * scheme.size(i) * scheme.size(j))


def module_coupling(g: ClassDependencyGraph, scheme: ModuleScheme, i: str) -> Fraction:
    _check_module(scheme, i)
    return sum(
        (bunch_coupling_pair(g, scheme, i, j) for j in scheme.modules if j != i), Fraction(0)
    )


def afferent_coupling(g: ClassDependencyGraph, scheme: ModuleScheme, i: str) -> int:
    _check_module(scheme, i)
    return len(
        {u for u, v in g.edges if scheme.module_of(v) == i and scheme.module_of(u) != i}
    )


def efferent_coupling(g: ClassDependencyGraph, scheme: ModuleScheme, i: str) -> int:
    _check_module(scheme, i)
    return len(
        {v for u, v in g.edges if scheme.module_of(u) == i and scheme.module_of(v) != i}
    )


def module_metrics_table(s: SystemSnapshot, scheme_name: str) -> list[ModuleMetricsRow]:
    """One row per module of ``scheme_name``, sorted by module name.

    Single pass over the dependency edges; equivalent to calling the
    per-module functions for every module.
    """
    scheme = s.scheme(scheme_name)
    g = class_dependency_graph(s)
    module_of = scheme.membership
    intra: dict[str, int] = defaultdict(int)
    between: dict[tuple[str, str], int] = defaultdict(int)
    sources: dict[str, set] = defaultdict(set)
    targets: dict[str, set] = defaultdict(set)
    for u, v in g.edges:
        mu, mv = module_of[u], module_of[v]
        if mu == mv:
            intra[mu] += 1
            continue
        between[(mu, mv) if mu < mv else (mv, mu)] += 1
        targets[mu].add(v)
        sources[mv].add(u)

    coupling: dict[str, Fraction] = defaultdict(Fraction)
    for (i, j), eps in between.items():
        e = Fraction(eps, 2 * scheme.size(i) * scheme.size(j))
        coupling[i] += e
        coupling[j] += e

    rows = []
    for m, members in scheme.members.items():
        n = len(members)
        rows.append(
            ModuleMetricsRow(
                module=ModuleId(scheme_name, m),
                class_count=n,
                cohesion=Fraction(intra[m], n * n),
                coupling=coupling[m],
                ca=len(sources[m]),
                ce=len(targets[m]),
                intra_edges=intra[m],
            )
        )
    return rows


def system_summary(rows: list[ModuleMetricsRow]) -> SystemMetricsSummary:
    """Unweighted per-module means of cohesion and coupling."""
    if not rows:
        raise InvalidArgumentError("cannot summarize an empty module list")
    schemes = {r.scheme for r in rows}
    if len(schemes) != 1:
        raise InvalidArgumentError(f"rows mix schemes {sorted(schemes)}")
    n = len(rows)
    return SystemMetricsSummary(
        scheme=schemes.pop(),
        module_count=n,
        avg_cohesion=sum((r.cohesion for r in rows), Fraction(0)) / n,
        avg_coupling=sum((r.coupling for r in rows), Fraction(0)) / n,
    )


def descriptive_stats(s: SystemSnapshot) -> DescriptiveStats:
    return DescriptiveStats(
        version_label=s.version,
        num_modules_per_scheme={sch.name: len(sch.members) for sch in s.schemes},
        num_classes=len(s.classes),
        num_methods=s.metadata.num_methods,
        lines_of_code=s.metadata.lines_of_code,
        num_invocations=sum(e.count for e in s.invocations),
    )


def metric_rows_by_module(rows: list[ModuleMetricsRow]) -> dict[str, ModuleMetricsRow]:
    return {r.module.name: r for r in rows}

