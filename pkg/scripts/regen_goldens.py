"""Regenerate the checked-in goldens under tests/golden/.

Two kinds of file:

* ``<name>.oracle.json`` holds per-module metric values, SCC lists and
  descriptive tallies computed by the brute-force oracle in tests/oracle.py
  straight from the fact JSON (the package is not imported).
* ``report.<fmt>`` holds the CLI ``report`` output over tiny-v1..v3. These are
  cross-checked against the oracle files by tests/test_golden.py.

Usage: python scripts/regen_goldens.py [values|reports|all]
"""

import json
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
GOLDEN = ROOT / "tests" / "golden"
sys.path.insert(0, str(ROOT / "tests"))

import oracle  # noqa: E402

FACTS = ["tiny", "tiny-v1", "tiny-v2", "tiny-v3"]
SERIES = ["tiny-v1", "tiny-v2", "tiny-v3"]
FORMATS = {"text": "txt", "csv": "csv", "structured": "json"}


def oracle_values(path):
    doc = json.loads(path.read_text(encoding="utf-8"))
    classes = [c["id"] for c in doc["classes"]]
    invocations = [(e["from"], e["to"], e["count"]) for e in doc["invocations"]]
    edges = oracle.dependency_edges(invocations)
    schemes = sorted(doc["classes"][0]["modules"])
    out = {
        "version": doc["version"],
        "num_classes": len(classes),
        "num_invocations": sum(n for _, _, n in invocations),
        "schemes": {},
    }
    for scheme in schemes:
        membership = {c["id"]: c["modules"][scheme] for c in doc["classes"]}
        rows = oracle.module_rows(classes, membership, invocations)
        mods, medges = oracle.module_graph(edges, membership)
        out["schemes"][scheme] = {
            "modules": {
                m: {k: str(v) for k, v in row.items()} for m, row in rows.items()
            },
            "module_edges": sorted(medges),
            "sccs": oracle.nontrivial_sccs(mods, medges),
        }
    return out


def regen_values():
    for name in FACTS:
        values = oracle_values(DATA / f"{name}.facts")
        target = GOLDEN / f"{name}.oracle.json"
        target.write_text(json.dumps(values, indent=2) + "\n", encoding="utf-8")
        print("wrote", target.relative_to(ROOT))


def regen_reports():
    files = [str(DATA / f"{n}.facts") for n in SERIES]
    for fmt, ext in FORMATS.items():
        target = GOLDEN / f"report.{ext}"
        subprocess.run(
            [sys.executable, "-m", "modquality", "report", *files, "--format", fmt,
             "--out", str(target)],
            check=True,
            cwd=ROOT,
        )
        print("wrote", target.relative_to(ROOT))


if __name__ == "__main__":
    what = sys.argv[1] if len(sys.argv) > 1 else "all"
    if what in ("values", "all"):
        regen_values()
    if what in ("reports", "all"):
        regen_reports()
