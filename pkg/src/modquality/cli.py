"""Command-line entry point: ``modquality <subcommand> ...``.

Exit status: 0 on success, 1 on data/validation errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from modquality import report
from modquality.errors import ModQualityError, ValidationError
from modquality.evolution import VersionPair, delta_from_rows, scc_series
from modquality.facts import (
    SystemSnapshot,
    class_dependency_graph,
    dump_snapshot,
    dumps_snapshot,
    load_snapshot,
)
from modquality.metrics import (
    METRIC_NAMES,
    descriptive_stats,
    module_metrics_table,
    system_summary,
)
from modquality.modgraph import export_edges, lift_module_graph
from modquality.synth import PRESET_CONFIG, SCENARIOS, GeneratorConfig, generate, scenario

SECTIONS = ("stats", "metrics", "deltas", "scc")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scheme", action="append", metavar="NAME",
                        help="module scheme to analyse (repeatable; default: all)")
    common.add_argument("--format", choices=report.FORMATS, default="text")
    common.add_argument("--lenient", action="store_true",
                        help="ignore unknown fields in fact files")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="modquality",
        description="Modularization-quality metrics over versioned class dependency facts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="descriptive statistics per version")
    p.add_argument("facts", nargs="+")

    p = sub.add_parser("metrics", parents=[common], help="per-module metrics and averages")
    p.add_argument("facts", nargs="+")

    p = sub.add_parser("scc", parents=[common], help="cyclic-dependency series")
    p.add_argument("facts", nargs="+")
    p.add_argument("--export-graph", metavar="PATH",
                   help="write module graphs as '<from> -> <to>' lines; PATH may contain "
                        "{version} and {scheme}")

    p = sub.add_parser("compare", parents=[common], help="increase/same/decrease tallies")
    p.add_argument("facts", nargs=2, metavar="FACTS")
    p.add_argument("--metric", action="append", choices=METRIC_NAMES)

    p = sub.add_parser("report", parents=[common], help="all sections")
    p.add_argument("facts", nargs="+")
    p.add_argument("--metric", action="append", choices=METRIC_NAMES)
    p.add_argument("--section", action="append", choices=SECTIONS)

    p = sub.add_parser("generate", parents=[common], help="emit synthetic fact files")
    p.add_argument("--seed", type=int, default=PRESET_CONFIG.seed)
    p.add_argument("--classes", type=int, default=PRESET_CONFIG.num_classes)
    p.add_argument("--modules", type=int, default=PRESET_CONFIG.num_modules)
    p.add_argument("--plugins", type=int, default=None)
    p.add_argument("--edge-prob", type=float, default=PRESET_CONFIG.edge_probability)
    p.add_argument("--intra-bias", type=float, default=PRESET_CONFIG.intra_bias)
    p.add_argument("--version-label", default="1.0")
    p.add_argument("--scenario", choices=sorted(SCENARIOS),
                   help="emit a before/after pair into the --out directory")
    return parser


def _load(path: str, strict: bool) -> SystemSnapshot:
    try:
        return load_snapshot(Path(path), strict=strict)
    except OSError as exc:
        raise ModQualityError(f"cannot read fact file {path!r}: {exc.strerror}") from None
    except ModQualityError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def load_all(paths, strict: bool = True) -> list[SystemSnapshot]:
    with ThreadPoolExecutor() as pool:
        snapshots = list(pool.map(lambda p: _load(p, strict), paths))
    labels = [s.version for s in snapshots]
    dupes = sorted({v for v in labels if labels.count(v) > 1})
    if dupes:
        raise ValidationError(f"duplicate version label(s) across inputs: {dupes}")
    return snapshots


def _schemes(args, snapshots: list[SystemSnapshot]) -> list[str]:
    if args.scheme:
        names = list(dict.fromkeys(args.scheme))
    else:
        names = list(snapshots[0].scheme_names)
    for s in snapshots:
        for name in names:
            s.scheme(name)  # NotFoundError names scheme and version
    return names


def build_tables(snapshots, schemes, sections, metrics) -> list[report.Table]:
    tables = []
    rows = {
        (s.version, name): module_metrics_table(s, name) for s in snapshots for name in schemes
    }
    if "stats" in sections:
        tables.append(report.stats_table([descriptive_stats(s) for s in snapshots], schemes))
    if "metrics" in sections:
        tables.append(report.metrics_table(
            [(s.version, rows[s.version, name]) for s in snapshots for name in schemes]))
        tables.append(report.summary_table(
            [(s.version, system_summary(rows[s.version, name]))
             for s in snapshots for name in schemes]))
    if "deltas" in sections and len(snapshots) >= 2:
        deltas = []
        for before, after in zip(snapshots, snapshots[1:]):
            label = VersionPair(before, after).label
            for name in schemes:
                for metric in metrics:
                    deltas.append((label, delta_from_rows(
                        rows[before.version, name], rows[after.version, name], metric)))
        tables.append(report.delta_table(deltas))
        tables.append(report.module_changes_table(deltas))
    if "scc" in sections:
        for name in schemes:
            tables.append(report.scc_table(name, scc_series(snapshots, name)))
    return tables


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        return
    stream = getattr(sys.stdout, "buffer", None)
    if stream is not None:
        stream.write(text.encode("utf-8"))
        stream.flush()
    else:
        sys.stdout.write(text)


def _export_graphs(template: str, snapshots, schemes) -> None:
    targets = [(s, name) for s in snapshots for name in schemes]
    if len(targets) > 1 and "{version}" not in template and "{scheme}" not in template:
        raise UsageError("--export-graph needs {version}/{scheme} placeholders for several graphs")
    for s, name in targets:
        mg = lift_module_graph(class_dependency_graph(s), s.scheme(name))
        path = template.format(version=s.version, scheme=name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(export_edges(mg))


def _generate(args) -> str | None:
    config = GeneratorConfig(
        seed=args.seed,
        num_classes=args.classes,
        num_modules=args.modules,
        num_plugins=args.plugins,
        edge_probability=args.edge_prob,
        intra_bias=args.intra_bias,
        version=args.version_label,
    )
    if not args.scenario:
        return dumps_snapshot(generate(config))
    if not args.out:
        raise UsageError("--scenario writes several files and needs --out DIRECTORY")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for s in scenario(args.scenario, config):
        dump_snapshot(s, outdir / f"{args.scenario}-{s.version}.facts")
    return None


def run(args) -> str | None:
    if args.command == "generate":
        return _generate(args)
    snapshots = load_all(args.facts, strict=not args.lenient)
    schemes = _schemes(args, snapshots)
    metrics = list(dict.fromkeys(getattr(args, "metric", None) or METRIC_NAMES))
    if args.command == "stats":
        sections = ("stats",)
    elif args.command == "metrics":
        sections = ("metrics",)
    elif args.command == "scc":
        if args.export_graph:
            _export_graphs(args.export_graph, snapshots, schemes)
        sections = ("scc",)
    elif args.command == "compare":
        sections = ("deltas",)
    else:
        sections = tuple(args.section or SECTIONS)
    return report.render_tables(build_tables(snapshots, schemes, sections, metrics), args.format)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = run(args)
        if text is not None:
            _emit(text, args.out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"modquality: error: {exc}", file=sys.stderr)
        return 2
    except ModQualityError as exc:
        print(f"modquality: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"modquality: error: cannot write {exc.filename!r}: {exc.strerror}", file=sys.stderr)
        return 1
    return 0
