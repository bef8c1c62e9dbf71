"""Table builders and renderers (text, csv, structured JSON).

Real-valued cells are shown with 3 decimals, rounded half-to-even on the
exact value; integers are printed verbatim; missing values print as
``unknown`` (``null`` in JSON). All three formats carry the same displayed
values.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from modquality.evolution import DeltaTable
from modquality.metrics import DescriptiveStats, ModuleMetricsRow, SystemMetricsSummary

FORMATS = ("text", "csv", "structured")
PLACES = 3
UNKNOWN = "unknown"
SEP = "  "


@dataclass
class Table:
    title: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    # text-format separators between adjacent columns; default SEP everywhere
    seps: tuple[str, ...] | None = None

    def separators(self) -> tuple[str, ...]:
        return self.seps or (SEP,) * (len(self.columns) - 1)


def format_real(x, places: int = PLACES) -> str:
    scaled = round(Fraction(x) * 10**places)  # Fraction rounds half to even
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{'-' if scaled < 0 else ''}{whole}.{frac:0{places}d}"


def _is_real(v) -> bool:
    return isinstance(v, (Fraction, float))


def display_value(v):
    """JSON-ready display value of a cell."""
    if _is_real(v):
        return float(format_real(v))
    return v


def cell_text(v) -> str:
    if v is None:
        return UNKNOWN
    if _is_real(v):
        return format_real(v)
    return str(v)


def render_row(cells: Sequence, seps: Sequence[str] | None = None) -> str:
    """Join already-formatted (or raw) cells without padding."""
    texts = [c if isinstance(c, str) else cell_text(c) for c in cells]
    seps = seps or (SEP,) * (len(texts) - 1)
    out = texts[0] if texts else ""
    for sep, text in zip(seps, texts[1:]):
        out += sep + text
    return out


def _render_text(table: Table) -> str:
    cells = [[cell_text(v) for v in row] for row in table.rows]
    numeric = [
        all(isinstance(row[k], (int, float, Fraction)) or row[k] is None for row in table.rows)
        and any(row[k] is not None for row in table.rows)
        for k in range(len(table.columns))
    ]
    widths = [
        max([len(h)] + [len(r[k]) for r in cells]) for k, h in enumerate(table.columns)
    ]

    def line(texts):
        padded = [
            t.rjust(w) if num else t.ljust(w) for t, w, num in zip(texts, widths, numeric)
        ]
        return render_row(padded, table.separators()).rstrip() + "\n"

    return line(table.columns) + "".join(line(r) for r in cells)


def _render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([cell_text(v) for v in row])
    return buf.getvalue()


def _table_json(table: Table) -> dict:
    return {
        "title": table.title,
        "columns": list(table.columns),
        "rows": [[display_value(v) for v in row] for row in table.rows],
    }


def render_table(table: Table, fmt: str = "text") -> str:
    return render_tables([table], fmt)


def render_tables(tables: Sequence[Table], fmt: str = "text") -> str:
    if fmt == "structured":
        doc = {"tables": [_table_json(t) for t in tables]}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    render = _render_text if fmt == "text" else _render_csv
    if len(tables) == 1:
        return render(tables[0])
    marker = "" if fmt == "text" else "# "
    return "\n".join(f"{marker}{t.title}\n{render(t)}" for t in tables)


def parse_structured(text: str) -> list[Table]:
    doc = json.loads(text)
    return [
        Table(t["title"], tuple(t["columns"]), [tuple(r) for r in t["rows"]])
        for t in doc["tables"]
    ]


# -- builders ------------------------------------------------------------------


def stats_table(stats: Sequence[DescriptiveStats], schemes: Sequence[str]) -> Table:
    columns = ("vers.", *(f"# {s}s" for s in schemes), "# classes", "# methods", "LOC",
               "# invocations")
    rows = [
        (
            st.version_label,
            *(st.num_modules_per_scheme[s] for s in schemes),
            st.num_classes,
            st.num_methods,
            st.lines_of_code,
            st.num_invocations,
        )
        for st in stats
    ]
    return Table("Descriptive statistics", columns, rows)


def metrics_table(per_version: Sequence[tuple[str, Sequence[ModuleMetricsRow]]]) -> Table:
    columns = ("version", "scheme", "module", "# classes", "cohesion", "coupling", "Ca", "Ce",
               "intra edges")
    rows = [
        (version, r.scheme, r.module.name, r.class_count, r.cohesion, r.coupling, r.ca, r.ce,
         r.intra_edges)
        for version, module_rows in per_version
        for r in module_rows
    ]
    return Table("Module metrics", columns, rows)


def summary_table(per_version: Sequence[tuple[str, SystemMetricsSummary]]) -> Table:
    columns = ("version", "scheme", "# modules", "cohesion", "coupling")
    rows = [
        (version, s.scheme, s.module_count, s.avg_cohesion, s.avg_coupling)
        for version, s in per_version
    ]
    return Table("Average cohesion and coupling (Bunch)", columns, rows)


def delta_table(per_pair: Sequence[tuple[str, DeltaTable]]) -> Table:
    columns = ("evolution", "scheme", "metric", "incr.", "same", "decr.", "created", "removed")
    rows = [
        (label, d.scheme, d.metric, d.increased, d.same, d.decreased, len(d.created),
         len(d.removed))
        for label, d in per_pair
    ]
    seps = (SEP, SEP, SEP, " & ", " & ", SEP, SEP)
    return Table("Metric evolution (increase / same / decrease)", columns, rows, seps)


def module_changes_table(per_pair: Sequence[tuple[str, DeltaTable]]) -> Table:
    """Created/removed modules, one row each; deduplicated across metrics."""
    rows = []
    seen = set()
    for label, d in per_pair:
        for change, modules in (("created", d.created), ("removed", d.removed)):
            for m in modules:
                key = (label, m.scheme, change, m.name)
                if key not in seen:
                    seen.add(key)
                    rows.append(key)
    return Table("Created and removed modules", ("evolution", "scheme", "change", "module"), rows)


def scc_table(scheme: str, series: Sequence[tuple[str, int, int]]) -> Table:
    return Table(
        f"Strongly connected components ({scheme})",
        ("version", "# SCC", "Largest SCC"),
        [tuple(r) for r in series],
    )
