"""Time a full report on a large synthetic snapshot.

    python3 scripts/scale_check.py [--classes 10000] [--modules 300] [--edge-prob 0.00099]
"""

import argparse
import sys
import tempfile
import time
from pathlib import Path

from modquality.cli import main as cli_main
from modquality.facts import dump_snapshot
from modquality.synth import GeneratorConfig, generate


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--classes", type=int, default=10_000)
    ap.add_argument("--modules", type=int, default=300)
    ap.add_argument("--edge-prob", type=float, default=0.00099)
    ap.add_argument("--intra-bias", type=float, default=4.0)
    args = ap.parse_args(argv)

    cfg = GeneratorConfig(seed=args.seed, num_classes=args.classes, num_modules=args.modules,
                          edge_probability=args.edge_prob, intra_bias=args.intra_bias)
    t0 = time.perf_counter()
    s = generate(cfg)
    t1 = time.perf_counter()
    print(f"generated {len(s.classes)} classes, {len(s.invocations)} edges in {t1 - t0:.2f}s")

    with tempfile.TemporaryDirectory() as tmp:
        facts = Path(tmp) / "big.facts"
        dump_snapshot(s, facts)
        t2 = time.perf_counter()
        code = cli_main(["report", str(facts), "--out", str(Path(tmp) / "report.txt")])
        t3 = time.perf_counter()
    print(f"report (load + metrics + SCC + render) took {t3 - t2:.2f}s, exit {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
