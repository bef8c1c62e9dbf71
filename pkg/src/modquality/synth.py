"""Seeded synthetic snapshots and structural evolution operations.

Random numbers come from numpy's PCG64 bit generator seeded with the config
seed; the generator string written into the snapshot metadata records the
algorithm, the sampling-scheme version and the numpy version.

Sampling scheme (version 1):

1. For each scheme ("package", then "plugin"), shuffle the class indices with
   ``rng.permutation`` and deal them round-robin into the modules, so every
   module gets ``n // m`` or ``n // m + 1`` classes and the two schemes
   cross-cut each other.
2. Draw one uniform ``rng.random()`` per ordered class pair, row by row; the
   pair becomes an invocation edge when the draw falls below
   ``min(1, p * intra_bias)`` for pairs inside the same package and ``p``
   otherwise. Self pairs are skipped.
3. Each edge gets an invocation count from ``rng.geometric(0.5)``.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from modquality.errors import (
    CompletenessError,
    InvalidArgumentError,
    NotFoundError,
    ValidationError,
)
from modquality.facts import (
    InvocationEdge,
    SnapshotMetadata,
    SystemSnapshot,
    build_snapshot,
)

SAMPLER_VERSION = 1
PACKAGE, PLUGIN = "package", "plugin"
# bounds memory of the pair-draw matrix
_BLOCK_CELLS = 1 << 22


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    num_classes: int = 40
    num_modules: int = 5
    edge_probability: float = 0.05
    intra_bias: float = 4.0
    # coarse scheme; defaults to a third of num_modules
    num_plugins: int | None = None
    version: str = "1.0"

    def __post_init__(self) -> None:
        if isinstance(self.seed, bool) or not 0 <= self.seed < 2**64:
            raise InvalidArgumentError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.num_classes < 1:
            raise InvalidArgumentError("num_classes must be >= 1")
        if not 1 <= self.num_modules <= self.num_classes:
            raise InvalidArgumentError("num_modules must be between 1 and num_classes")
        if not 1 <= self.plugins <= self.num_classes:
            raise InvalidArgumentError("num_plugins must be between 1 and num_classes")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise InvalidArgumentError("edge_probability must lie in [0, 1]")
        if self.intra_bias < 1.0:
            raise InvalidArgumentError("intra_bias must be >= 1")
        if not self.version:
            raise InvalidArgumentError("version label must be non-empty")

    @property
    def plugins(self) -> int:
        if self.num_plugins is not None:
            return self.num_plugins
        return max(1, self.num_modules // 3)


def _names(prefix: str, n: int) -> list[str]:
    width = len(str(n - 1))
    return [f"{prefix}{k:0{width}d}" for k in range(n)]


def _deal(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    order = rng.permutation(n)
    assignment = np.empty(n, dtype=np.int64)
    assignment[order] = np.arange(n) % m
    return assignment


def generator_tag(seed: int) -> str:
    return f"modquality.synth/{SAMPLER_VERSION} numpy.random.PCG64 seed={seed} numpy={np.__version__}"


def generate(config: GeneratorConfig) -> SystemSnapshot:
    rng = np.random.Generator(np.random.PCG64(config.seed))
    n = config.num_classes
    classes = _names("org.synth.C", n)
    packages = _names("org.synth.p", config.num_modules)
    plugins = _names("org.synth.plugin", config.plugins)
    pkg = _deal(rng, n, config.num_modules)
    plug = _deal(rng, n, config.plugins)

    p_inter = config.edge_probability
    p_intra = min(1.0, config.edge_probability * config.intra_bias)
    rows = max(1, _BLOCK_CELLS // n)
    sources, targets = [], []
    for lo in range(0, n, rows):
        hi = min(n, lo + rows)
        draws = rng.random((hi - lo, n))
        same = pkg[lo:hi, None] == pkg[None, :]
        hit = draws < np.where(same, p_intra, p_inter)
        hit[np.arange(hi - lo), np.arange(lo, hi)] = False
        u, v = np.nonzero(hit)
        sources.append(u + lo)
        targets.append(v)
    src = np.concatenate(sources)
    dst = np.concatenate(targets)
    counts = rng.geometric(0.5, size=src.size)

    assignments = {
        c: {PACKAGE: packages[pkg[k]], PLUGIN: plugins[plug[k]]} for k, c in enumerate(classes)
    }
    edges = [
        InvocationEdge(classes[a], classes[b], int(w))
        for a, b, w in zip(src.tolist(), dst.tolist(), counts.tolist())
    ]
    meta = SnapshotMetadata(config.version, generator=generator_tag(config.seed))
    return build_snapshot(meta, assignments, edges)


# -- evolution operations ------------------------------------------------------


@dataclass(frozen=True)
class SplitModule:
    """Replace ``module`` by the modules in ``parts``, which must partition its classes."""

    scheme: str
    module: str
    parts: Mapping[str, Sequence[str]]
    kind = "split_module"


@dataclass(frozen=True)
class MergeModules:
    scheme: str
    modules: Sequence[str]
    into: str
    kind = "merge_modules"


@dataclass(frozen=True)
class MoveClass:
    scheme: str
    cls: str
    to: str
    kind = "move_class"


@dataclass(frozen=True)
class AddClass:
    cls: str
    modules: Mapping[str, str]
    kind = "add_class"


@dataclass(frozen=True)
class RemoveClass:
    cls: str
    kind = "remove_class"


@dataclass(frozen=True)
class AddEdge:
    source: str
    target: str
    count: int = 1
    kind = "add_edge"


@dataclass(frozen=True)
class RemoveEdge:
    source: str
    target: str
    kind = "remove_edge"


EvolutionOp = (SplitModule, MergeModules, MoveClass, AddClass, RemoveClass, AddEdge, RemoveEdge)


def _require_class(s: SystemSnapshot, cls: str) -> None:
    if cls not in s.scheme(s.scheme_names[0]).membership:
        raise NotFoundError(f"unknown class {cls!r}")


def _require_nonempty(assign, scheme: str, module: str) -> None:
    if not any(m[scheme] == module for m in assign.values()):
        raise ValidationError(f"operation would leave module {module!r} ({scheme}) empty")


def apply(s: SystemSnapshot, op, *, version: str | None = None) -> SystemSnapshot:
    """Return a new snapshot with ``op`` applied.

    The version label becomes ``version`` or ``"<old>+<op kind>"``.
    """
    assign = s.assignments()
    edges = {(e.source, e.target): e.count for e in s.invocations}

    if isinstance(op, (SplitModule, MergeModules, MoveClass)):
        scheme = s.scheme(op.scheme)
        existing = set(scheme.modules)

    if isinstance(op, SplitModule):
        members = set(scheme.classes_of(op.module))
        if len(op.parts) < 2:
            raise InvalidArgumentError("a split needs at least two parts")
        listed = [c for part in op.parts.values() for c in part]
        for c in listed:
            if c not in members:
                raise NotFoundError(f"class {c!r} is not in module {op.module!r}")
        if len(listed) != len(set(listed)) or set(listed) != members:
            raise ValidationError(f"split parts must partition the classes of {op.module!r}")
        for name, part in op.parts.items():
            if not part:
                raise ValidationError(f"split part {name!r} is empty")
            if name != op.module and name in existing:
                raise ValidationError(f"split target {name!r} already exists")
            for c in part:
                assign[c][op.scheme] = name
    elif isinstance(op, MergeModules):
        if len(op.modules) < 2:
            raise InvalidArgumentError("a merge needs at least two modules")
        for m in op.modules:
            scheme.classes_of(m)
        if op.into in existing and op.into not in op.modules:
            raise ValidationError(f"merge target {op.into!r} already exists")
        merged = set(op.modules)
        for c in assign:
            if assign[c][op.scheme] in merged:
                assign[c][op.scheme] = op.into
    elif isinstance(op, MoveClass):
        _require_class(s, op.cls)
        old = assign[op.cls][op.scheme]
        assign[op.cls][op.scheme] = op.to
        _require_nonempty(assign, op.scheme, old)
    elif isinstance(op, AddClass):
        if op.cls in assign:
            raise ValidationError(f"class {op.cls!r} already exists")
        if set(op.modules) != set(s.scheme_names):
            raise CompletenessError(
                f"new class {op.cls!r} must name a module for each of {list(s.scheme_names)}"
            )
        assign[op.cls] = dict(op.modules)
    elif isinstance(op, RemoveClass):
        _require_class(s, op.cls)
        old = assign.pop(op.cls)
        for name, module in old.items():
            _require_nonempty(assign, name, module)
        edges = {k: n for k, n in edges.items() if op.cls not in k}
    elif isinstance(op, AddEdge):
        _require_class(s, op.source)
        _require_class(s, op.target)
        if op.count < 1:
            raise InvalidArgumentError("invocation count must be >= 1")
        edges[op.source, op.target] = edges.get((op.source, op.target), 0) + op.count
    elif isinstance(op, RemoveEdge):
        if (op.source, op.target) not in edges:
            raise NotFoundError(f"no invocation {op.source!r} -> {op.target!r}")
        del edges[op.source, op.target]
    else:
        raise InvalidArgumentError(f"not an evolution operation: {op!r}")

    label = version or f"{s.version}+{op.kind}"
    meta = dataclasses.replace(s.metadata, version_label=label)
    return build_snapshot(meta, assign, [InvocationEdge(a, b, n) for (a, b), n in edges.items()])


def apply_all(s: SystemSnapshot, ops, *, version: str | None = None) -> SystemSnapshot:
    for op in ops:
        s = apply(s, op)
    return relabel(s, version) if version else s


def relabel(s: SystemSnapshot, version: str) -> SystemSnapshot:
    return dataclasses.replace(s, metadata=dataclasses.replace(s.metadata, version_label=version))


# -- scenario presets ----------------------------------------------------------

PRESET_CONFIG = GeneratorConfig(
    seed=2010, num_classes=60, num_modules=6, edge_probability=0.05, intra_bias=4.0
)
MONOLITH = "org.synth.ui"


def _monolith_split(config: GeneratorConfig) -> list[SystemSnapshot]:
    base = generate(config)
    packages = base.scheme(PACKAGE).modules
    if len(packages) < 2:
        raise InvalidArgumentError("monolith-split needs at least two packages")
    absorbed = packages[: max(2, len(packages) // 2)]
    before = apply(base, MergeModules(PACKAGE, absorbed, MONOLITH), version="1.0")
    rng = np.random.Generator(np.random.PCG64([config.seed, 1]))
    members = list(before.scheme(PACKAGE).classes_of(MONOLITH))
    order = rng.permutation(len(members)).tolist()
    successors = [f"{MONOLITH}.{name}" for name in ("actions", "core", "views")]
    if len(members) < len(successors):
        raise InvalidArgumentError("monolith-split needs at least three classes in the monolith")
    parts = {
        name: [members[i] for i in order[k :: len(successors)]]
        for k, name in enumerate(successors)
    }
    after = apply(before, SplitModule(PACKAGE, MONOLITH, parts), version="2.0")
    return [before, after]


def _organic_growth(config: GeneratorConfig) -> list[SystemSnapshot]:
    before = relabel(generate(config), "1.0")
    rng = np.random.Generator(np.random.PCG64([config.seed, 2]))
    packages = before.scheme(PACKAGE).modules
    plugins = before.scheme(PLUGIN).modules
    existing = list(before.classes)
    added = max(1, config.num_classes // 10)
    ops: list = []
    new_classes = _names("org.synth.N", added)
    for cls in new_classes:
        ops.append(
            AddClass(
                cls,
                {
                    PACKAGE: packages[int(rng.integers(len(packages)))],
                    PLUGIN: plugins[int(rng.integers(len(plugins)))],
                },
            )
        )
    for cls in new_classes:
        for target in rng.choice(len(existing), size=min(3, len(existing)), replace=False).tolist():
            ops.append(AddEdge(cls, existing[target], int(rng.geometric(0.5))))
        ops.append(AddEdge(existing[int(rng.integers(len(existing)))], cls, 1))
    return [before, apply_all(before, ops, version="1.1")]


SCENARIOS = {
    "monolith-split": _monolith_split,
    "organic-growth": _organic_growth,
}


def scenario(name: str, config: GeneratorConfig | None = None) -> list[SystemSnapshot]:
    """Two successive versions produced by a named preset."""
    try:
        build = SCENARIOS[name]
    except KeyError:
        raise NotFoundError(f"unknown scenario {name!r}; expected one of {sorted(SCENARIOS)}") from None
    return build(config or PRESET_CONFIG)
