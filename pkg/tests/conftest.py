import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from modquality.facts import InvocationEdge, build_snapshot  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def golden_dir():
    return GOLDEN


def snapshot_from_parts(version, n, pkg, plug, edges):
    classes = [f"c{k}" for k in range(n)]
    assign = {c: {"package": f"P{pkg[k]}", "plugin": f"G{plug[k]}"} for k, c in enumerate(classes)}
    return build_snapshot(
        version, assign, [InvocationEdge(classes[a], classes[b], w) for a, b, w in edges]
    )


@st.composite
def small_snapshots(draw, max_classes=8):
    n = draw(st.integers(1, max_classes))
    k = draw(st.integers(1, n))
    pkg = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    plug = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    pairs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 4)),
            max_size=n * n,
        )
    )
    return snapshot_from_parts("v", n, pkg, plug, pairs)


def random_small_snapshot(rng: random.Random, max_classes=8, version="v"):
    n = rng.randint(1, max_classes)
    k = rng.randint(1, n)
    pkg = [rng.randrange(k) for _ in range(n)]
    plug = [rng.randrange(3) for _ in range(n)]
    density = rng.random()
    edges = [
        (a, b, rng.randint(1, 4))
        for a in range(n)
        for b in range(n)
        if rng.random() < density
    ]
    return snapshot_from_parts(version, n, pkg, plug, edges)


# -- acceptance summary ---------------------------------------------------------

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        doc = getattr(report, "criterion", None) or report.nodeid.split("::")[-1]
        _acceptance.append((report.outcome, doc))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    criterion = getattr(item.function, "criterion", None)
    if criterion:
        rep.criterion = criterion


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, doc in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {doc}")
