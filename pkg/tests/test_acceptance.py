"""Exit criteria. Each test carries a ``criterion`` label; conftest prints a
PASS/FAIL line per criterion at the end of the run."""

import random
import time
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter

import oracle
from conftest import random_small_snapshot
from modquality.cli import SECTIONS, build_tables, main
from modquality.errors import ModQualityError
from modquality.evolution import VersionPair, classify_delta, match_modules
from modquality.facts import (
    ModuleId,
    class_dependency_graph,
    dump_snapshot,
    load_snapshot,
)
from modquality.metrics import (
    METRIC_NAMES,
    afferent_coupling,
    bunch_cohesion,
    bunch_coupling_pair,
    efferent_coupling,
    inter_edge_count,
    intra_edge_count,
    module_coupling,
    module_metrics_table,
)
from modquality.modgraph import (
    ModuleDependencyGraph,
    scc_analysis,
    strongly_connected_components,
)
from modquality.report import render_tables
from modquality.synth import (
    MONOLITH,
    AddClass,
    AddEdge,
    GeneratorConfig,
    MergeModules,
    MoveClass,
    RemoveClass,
    RemoveEdge,
    SplitModule,
    apply,
    generate,
    relabel,
    scenario,
)

FLOAT_TOL = 1e-12


def criterion(label):
    def mark(fn):
        fn.criterion = label
        return fn

    return mark


def _agree(got, want):
    if isinstance(got, float):
        return abs(got - float(want)) <= FLOAT_TOL
    return got == want


@criterion("metric oracle suite: 500 random snapshots (<= 8 classes), exact, < 30 s")
def test_metric_oracle_suite():
    rng = random.Random(20100101)
    start = time.perf_counter()
    checked = mismatches = 0
    for _ in range(500):
        s = random_small_snapshot(rng)
        invocations = [(e.source, e.target, e.count) for e in s.invocations]
        edges = oracle.dependency_edges(invocations)
        g = class_dependency_graph(s)
        for name in s.scheme_names:
            sch = s.scheme(name)
            members = oracle.module_members(sch.membership)
            table = {r.module.name: r for r in module_metrics_table(s, name)}
            for i in members:
                want = {
                    "mu": oracle.mu(edges, members, i),
                    "A": oracle.cohesion(edges, members, i),
                    "E": oracle.coupling(edges, members, i),
                    "Ca": oracle.ca(edges, members, s.classes, i),
                    "Ce": oracle.ce(edges, members, s.classes, i),
                }
                row = table[i]
                got_routes = [
                    {"mu": row.intra_edges, "A": row.cohesion, "E": row.coupling,
                     "Ca": row.ca, "Ce": row.ce},
                    {"mu": intra_edge_count(g, sch, i), "A": bunch_cohesion(g, sch, i),
                     "E": module_coupling(g, sch, i), "Ca": afferent_coupling(g, sch, i),
                     "Ce": efferent_coupling(g, sch, i)},
                ]
                for got in got_routes:
                    mismatches += sum(not _agree(got[k], want[k]) for k in want)
                for j in members:
                    if j != i:
                        mismatches += inter_edge_count(g, sch, i, j) != oracle.eps(edges, members, i, j)
                        mismatches += bunch_coupling_pair(g, sch, i, j) != oracle.coupling_pair(
                            edges, members, i, j)
        checked += 1
    elapsed = time.perf_counter() - start
    assert checked >= 500
    assert mismatches == 0
    assert elapsed < 30.0, f"took {elapsed:.1f}s"


@criterion("formula spot checks: 2/9 cohesion, 1/6 pair coupling, 1.0 saturation, Ce mirror")
def test_formula_spot_checks():
    from modquality.facts import build_snapshot

    def setup(modules, edges):
        s = build_snapshot("v", {c: {"package": m} for m, cs in modules.items() for c in cs},
                           [(a, b, 1) for a, b in edges])
        return class_dependency_graph(s), s.scheme("package")

    g, sch = setup({"m": ["c1", "c2", "c3"]}, [("c1", "c2"), ("c2", "c3")])
    assert bunch_cohesion(g, sch, "m") == Fraction(2, 9)
    g, sch = setup({"i": ["i1", "i2"], "j": ["j1", "j2", "j3"]}, [("i1", "j1"), ("i2", "j2")])
    assert bunch_coupling_pair(g, sch, "i", "j") == Fraction(1, 6)
    g, sch = setup({"i": ["a"], "j": ["b"]}, [("a", "b"), ("b", "a")])
    assert bunch_coupling_pair(g, sch, "i", "j") == 1
    g, sch = setup({"A": ["a"], "B": ["b"]}, [("a", "b")])
    assert efferent_coupling(g, sch, "A") == 1 and afferent_coupling(g, sch, "B") == 1


@criterion("SCC oracle suite: 500 random module graphs (<= 10 vertices), acyclic condensation, < 30 s")
def test_scc_oracle_suite():
    rng = random.Random(2004)
    start = time.perf_counter()
    failures = 0
    for _ in range(500):
        n = rng.randint(1, 10)
        vertices = [f"M{k}" for k in range(n)]
        density = rng.random() * 0.5
        edges = {(a, b) for a in vertices for b in vertices if a != b and rng.random() < density}
        succ = {v: sorted(w for (u, w) in edges if u == v) for v in vertices}
        comps = strongly_connected_components(vertices, succ)
        failures += {frozenset(c) for c in comps} != oracle.scc_partition(vertices, edges)
        report = scc_analysis(ModuleDependencyGraph("package", tuple(vertices), tuple(sorted(edges))))
        failures += [list(c) for c in report.scc_members] != oracle.nontrivial_sccs(vertices, edges)
        owner = {v: k for k, c in enumerate(comps) for v in c}
        deps = {k: {owner[w] for v in c for w in succ[v] if owner[w] != k}
                for k, c in enumerate(comps)}
        try:
            list(TopologicalSorter(deps).static_order())
        except CycleError:
            failures += 1
    elapsed = time.perf_counter() - start
    assert failures == 0
    assert elapsed < 30.0, f"took {elapsed:.1f}s"


def _random_evolution(rng, s):
    """Apply a handful of random structural and additive ops."""
    for k in range(rng.randint(1, 6)):
        sch = s.scheme("package")
        kind = rng.choice(["split", "merge", "move", "add_class", "remove_class",
                           "add_edge", "remove_edge"])
        if kind == "split":
            big = [m for m in sch.modules if len(sch.classes_of(m)) >= 2]
            if not big:
                continue
            m = rng.choice(big)
            cs = sch.classes_of(m)
            cut = rng.randint(1, len(cs) - 1)
            op = SplitModule("package", m, {f"{m}.s{k}a": cs[:cut], f"{m}.s{k}b": cs[cut:]})
        elif kind == "merge":
            if len(sch.modules) < 2:
                continue
            a, b = rng.sample(sch.modules, 2)
            op = MergeModules("package", [a, b], a)
        elif kind == "move":
            op = MoveClass("package", rng.choice(s.classes), rng.choice(sch.modules))
        elif kind == "add_class":
            homes = {n: rng.choice(s.scheme(n).modules) for n in s.scheme_names}
            op = AddClass(f"org.synth.X{k}", homes)
        elif kind == "remove_class":
            op = RemoveClass(rng.choice(s.classes))
        elif kind == "add_edge":
            op = AddEdge(rng.choice(s.classes), rng.choice(s.classes), rng.randint(1, 3))
        else:
            if not s.invocations:
                continue
            e = rng.choice(s.invocations)
            op = RemoveEdge(e.source, e.target)
        try:
            s = apply(s, op)
        except ModQualityError:
            continue  # e.g. the op would empty a module
    return s


@criterion("evolution properties: antisymmetry, self-comparison, partition on 100 generated pairs")
def test_evolution_properties():
    rng = random.Random(31)
    failures = 0
    for k in range(100):
        cfg = GeneratorConfig(seed=k, num_classes=rng.randint(6, 30), num_modules=rng.randint(2, 5),
                              edge_probability=rng.uniform(0.02, 0.3),
                              intra_bias=rng.uniform(1, 5))
        v1 = relabel(generate(cfg), "v1")
        v2 = relabel(_random_evolution(rng, v1), "v2")
        forward, backward = VersionPair(v1, v2), VersionPair(v2, v1)
        for scheme in v1.scheme_names:
            matched, created, removed = match_modules(forward, scheme)
            before = {ModuleId(scheme, m) for m in v1.scheme(scheme).modules}
            after = {ModuleId(scheme, m) for m in v2.scheme(scheme).modules}
            matched_ids = {a for a, _ in matched}
            failures += matched_ids | set(created) | set(removed) != before | after
            failures += len(matched_ids) + len(created) + len(removed) != len(before | after)
            failures += len(matched) + len(removed) != len(before)
            failures += len(matched) + len(created) != len(after)
            for metric in METRIC_NAMES:
                f = classify_delta(forward, scheme, metric)
                b = classify_delta(backward, scheme, metric)
                failures += (f.increased, f.same, f.decreased) != (b.decreased, b.same, b.increased)
                failures += f.matched != len(matched)
                own = classify_delta(VersionPair(v1, relabel(v1, "v1-copy")), scheme, metric)
                failures += (own.increased, own.same, own.decreased) != (0, len(before), 0)
    assert failures == 0


@criterion("bounds and symmetry: 0 <= A_i <= (N_i-1)/N_i, E_ij = E_ji in [0,1], zero violations")
def test_bounds_and_symmetry():
    violations = 0
    checked = 0
    rng = random.Random(7)
    for k in range(60):
        n = rng.randint(1, 40)
        cfg = GeneratorConfig(seed=1000 + k, num_classes=n, num_modules=rng.randint(1, n),
                              num_plugins=rng.randint(1, n), edge_probability=rng.uniform(0, 0.6),
                              intra_bias=rng.uniform(1, 8))
        s = generate(cfg)
        g = class_dependency_graph(s)
        for name in s.scheme_names:
            sch = s.scheme(name)
            for r in module_metrics_table(s, name):
                n = r.class_count
                violations += not (0 <= r.cohesion <= Fraction(n - 1, n))
            for i in sch.modules:
                for j in sch.modules:
                    if i < j:
                        e_ij = bunch_coupling_pair(g, sch, i, j)
                        e_ji = bunch_coupling_pair(g, sch, j, i)
                        violations += e_ij != e_ji or not 0 <= e_ij <= 1
                        checked += 1
    assert checked > 0
    assert violations == 0


@criterion("methodology smoke test: monolith-split adds modules, organic-growth keeps module set")
def test_methodology_smoke():
    before, after = scenario("monolith-split")
    pkg_before = set(before.scheme("package").modules)
    pkg_after = set(after.scheme("package").modules)
    assert MONOLITH in pkg_before and MONOLITH not in pkg_after
    successors = sorted(m for m in pkg_after if m.startswith(MONOLITH + "."))
    assert len(successors) >= 2
    rows = {r.module.name: r for r in module_metrics_table(after, "package")}
    for m in successors:
        assert rows[m].class_count >= 1
        assert isinstance(rows[m].cohesion, Fraction)
        assert 0 <= rows[m].cohesion < 1
    assert len(pkg_after) > len(pkg_before)

    grown_before, grown_after = scenario("organic-growth")
    for scheme in grown_before.scheme_names:
        assert grown_before.scheme(scheme).modules == grown_after.scheme(scheme).modules
    assert len(grown_after.classes) > len(grown_before.classes)
    assert len(grown_after.invocations) > len(grown_before.invocations)


@criterion("golden reports: report over tiny-v1..v3 matches checked-in goldens byte-for-byte")
def test_golden_reports(data_dir, golden_dir, tmp_path):
    files = [str(data_dir / f"tiny-v{k}.facts") for k in (1, 2, 3)]
    for fmt, ext in (("text", "txt"), ("csv", "csv"), ("structured", "json")):
        out = tmp_path / f"report.{ext}"
        assert main(["report", *files, "--format", fmt, "--out", str(out)]) == 0
        assert out.read_bytes() == (golden_dir / f"report.{ext}").read_bytes(), fmt


@criterion("scale check: full report, 10,000 classes / 300 modules / ~100,000 edges, < 10 s")
def test_scale(tmp_path):
    cfg = GeneratorConfig(seed=42, num_classes=10_000, num_modules=300,
                          edge_probability=0.00099, intra_bias=4.0)
    s = generate(cfg)
    assert 90_000 <= len(s.invocations) <= 110_000
    path = tmp_path / "big.facts"
    dump_snapshot(s, path)

    start = time.perf_counter()
    assert main(["report", str(path), "--out", str(tmp_path / "big.txt")]) == 0
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"full report took {elapsed:.2f}s"
    # same tables built in-process agree with what the CLI wrote
    loaded = load_snapshot(path)
    tables = build_tables([loaded], list(loaded.scheme_names), SECTIONS, METRIC_NAMES)
    assert render_tables(tables, "text") == (tmp_path / "big.txt").read_text(encoding="utf-8")
