"""Module dependency graphs and cyclic-dependency statistics.

Module ``i`` depends on module ``j`` (``i != j``) iff some class of ``i``
depends on some class of ``j``. Only strongly connected components with two
or more modules are reported: a lone module is never a cyclic dependency, and
module-level self-loops cannot occur because intra-module edges are not lifted.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import TypeVar

from modquality.facts import ClassDependencyGraph, ModuleScheme

T = TypeVar("T")


@dataclass(frozen=True)
class ModuleDependencyGraph:
    scheme: str
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def successors(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out[u].append(v)
        return out


@dataclass(frozen=True)
class SccReport:
    scheme: str
    num_nontrivial_scc: int
    largest_scc_size: int
    scc_members: tuple[tuple[str, ...], ...]


def lift_module_graph(g: ClassDependencyGraph, scheme: ModuleScheme) -> ModuleDependencyGraph:
    edges = set()
    for u, v in g.edges:
        mu, mv = scheme.module_of(u), scheme.module_of(v)
        if mu != mv:
            edges.add((mu, mv))
    for c in g.vertices:
        scheme.module_of(c)
    return ModuleDependencyGraph(scheme.name, scheme.modules, tuple(sorted(edges)))


def strongly_connected_components(
    vertices: Iterable[T], successors: Mapping[T, Sequence[T]]
) -> list[list[T]]:
    """Tarjan's algorithm, iterative. Returns every SCC (singletons included)
    in reverse topological order of the condensation."""
    index: dict[T, int] = {}
    low: dict[T, int] = {}
    on_stack: set[T] = set()
    stack: list[T] = []
    result: list[list[T]] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors.get(root, ())))]
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors.get(w, ()))))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    component = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        component.append(w)
                        if w == v:
                            break
                    result.append(component)
    return result


def scc_analysis(mg: ModuleDependencyGraph) -> SccReport:
    comps = [
        tuple(sorted(c))
        for c in strongly_connected_components(mg.vertices, mg.successors())
        if len(c) >= 2
    ]
    comps.sort(key=lambda c: (-len(c), c))
    return SccReport(
        scheme=mg.scheme,
        num_nontrivial_scc=len(comps),
        largest_scc_size=len(comps[0]) if comps else 0,
        scc_members=tuple(comps),
    )


def export_edges(mg: ModuleDependencyGraph) -> str:
    """Plain-text edge list, one ``<from> -> <to>`` per line."""
    return "".join(f"{u} -> {v}\n" for u, v in mg.edges)
