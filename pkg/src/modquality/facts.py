"""Versioned dependency facts: data model, fact-file I/O, class dependency graph.

A fact file is a JSON document describing one version of a system::

    {
      "version": "2.1",
      "metadata": {"num_methods": 29098, "lines_of_code": 540948},
      "classes": [
        {"id": "org.x.A", "modules": {"package": "org.x", "plugin": "core"}}
      ],
      "invocations": [{"from": "org.x.A", "to": "org.x.B", "count": 3}]
    }

Every class lists the same scheme names. Unknown fields are rejected unless
``strict=False``.
"""

from __future__ import annotations

import io
import json
import os
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import BinaryIO, NamedTuple, Union

from modquality.errors import (
    CompletenessError,
    FactFormatError,
    NotFoundError,
    ReferentialIntegrityError,
    ValidationError,
)

ClassId = str

Source = Union[bytes, str, "os.PathLike[str]", BinaryIO]


class ModuleId(NamedTuple):
    scheme: str
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ModuleScheme:
    """Total assignment of classes to modules under one scheme name."""

    name: str
    membership: Mapping[ClassId, str]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("scheme name must be non-empty")
        for cls, mod in self.membership.items():
            if not mod:
                raise ValidationError(f"class {cls!r} has an empty module name in scheme {self.name!r}")

    @cached_property
    def members(self) -> dict[str, tuple[ClassId, ...]]:
        """Module name -> sorted member classes, modules in name order."""
        groups: dict[str, list[ClassId]] = defaultdict(list)
        for cls, mod in self.membership.items():
            groups[mod].append(cls)
        return {mod: tuple(sorted(groups[mod])) for mod in sorted(groups)}

    @property
    def modules(self) -> tuple[str, ...]:
        return tuple(self.members)

    def module_of(self, cls: ClassId) -> str:
        try:
            return self.membership[cls]
        except KeyError:
            raise CompletenessError(f"class {cls!r} has no module in scheme {self.name!r}") from None

    def size(self, module: str) -> int:
        return len(self.classes_of(module))

    def classes_of(self, module: str) -> tuple[ClassId, ...]:
        try:
            return self.members[module]
        except KeyError:
            raise NotFoundError(f"unknown module {module!r} in scheme {self.name!r}") from None


@dataclass(frozen=True, order=True)
class InvocationEdge:
    source: ClassId
    target: ClassId
    count: int = 1

    def __post_init__(self) -> None:
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 1:
            raise ValidationError(f"invocation count must be a positive integer, got {self.count!r}")


@dataclass(frozen=True)
class SnapshotMetadata:
    version_label: str
    num_methods: int | None = None
    lines_of_code: int | None = None
    # free-form provenance, set by the synthetic generator
    generator: str | None = None

    def __post_init__(self) -> None:
        if not self.version_label:
            raise ValidationError("version label must be non-empty")
        for name in ("num_methods", "lines_of_code"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValidationError(f"{name} must be non-negative, got {value}")


@dataclass(frozen=True)
class SystemSnapshot:
    """One version's validated, normalized fact set.

    Use :func:`build_snapshot` rather than the constructor to get
    normalization (sorting, duplicate-edge merging).
    """

    metadata: SnapshotMetadata
    classes: tuple[ClassId, ...]
    schemes: tuple[ModuleScheme, ...]
    invocations: tuple[InvocationEdge, ...] = ()

    def __post_init__(self) -> None:
        class_set = set(self.classes)
        if len(class_set) != len(self.classes):
            raise ValidationError("duplicate class ids in snapshot")
        if "" in class_set:
            raise ValidationError("class ids must be non-empty")
        if not self.schemes:
            raise ValidationError("a snapshot needs at least one module scheme")
        names = [s.name for s in self.schemes]
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate scheme names: {names}")
        for scheme in self.schemes:
            missing = class_set.difference(scheme.membership)
            if missing:
                raise CompletenessError(
                    f"class {min(missing)!r} has no module in scheme {scheme.name!r}"
                )
            unknown = set(scheme.membership).difference(class_set)
            if unknown:
                raise ReferentialIntegrityError(
                    f"scheme {scheme.name!r} assigns undeclared class {min(unknown)!r}"
                )
        for edge in self.invocations:
            for end in (edge.source, edge.target):
                if end not in class_set:
                    raise ReferentialIntegrityError(f"invocation references undeclared class {end!r}")

    @property
    def version(self) -> str:
        return self.metadata.version_label

    @property
    def scheme_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.schemes)

    def scheme(self, name: str) -> ModuleScheme:
        for s in self.schemes:
            if s.name == name:
                return s
        raise NotFoundError(f"unknown scheme {name!r} in version {self.version!r}")

    def assignments(self) -> dict[ClassId, dict[str, str]]:
        return {c: {s.name: s.membership[c] for s in self.schemes} for c in self.classes}


def build_snapshot(
    metadata: SnapshotMetadata | str,
    assignments: Mapping[ClassId, Mapping[str, str]],
    invocations: Iterable[InvocationEdge | tuple] = (),
) -> SystemSnapshot:
    """Normalize raw facts into a snapshot.

    ``assignments`` maps each class to ``{scheme: module}``; all classes must
    name the same schemes. Duplicate invocations are merged by summing counts.
    """
    if isinstance(metadata, str):
        metadata = SnapshotMetadata(metadata)
    classes = tuple(sorted(assignments))
    scheme_names: list[str] | None = None
    for cls in classes:
        names = sorted(assignments[cls])
        if scheme_names is None:
            scheme_names = names
        elif names != scheme_names:
            missing = set(scheme_names).symmetric_difference(names)
            raise CompletenessError(
                f"class {cls!r} does not list the same schemes as the others "
                f"(differs on {sorted(missing)})"
            )
    schemes = tuple(
        ModuleScheme(name, {cls: assignments[cls][name] for cls in classes})
        for name in scheme_names or ()
    )
    merged: dict[tuple[ClassId, ClassId], int] = defaultdict(int)
    for edge in invocations:
        if not isinstance(edge, InvocationEdge):
            edge = InvocationEdge(*edge)
        merged[edge.source, edge.target] += edge.count
    edges = tuple(InvocationEdge(s, t, n) for (s, t), n in sorted(merged.items()))
    return SystemSnapshot(metadata, classes, schemes, edges)


# -- fact-file I/O -------------------------------------------------------------

_TOP_FIELDS = {"version", "metadata", "classes", "invocations"}
_META_FIELDS = {"num_methods", "lines_of_code", "generator"}
_CLASS_FIELDS = {"id", "modules"}
_EDGE_FIELDS = {"from", "to", "count"}


def _read_bytes(source: Source) -> bytes:
    if isinstance(source, bytes):
        return source
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read()
    data = source.read()
    return data.encode("utf-8") if isinstance(data, str) else data


def _check_fields(obj, allowed, required, where, strict):
    if not isinstance(obj, dict):
        raise FactFormatError("expected an object", record=where)
    if strict:
        extra = set(obj) - allowed
        if extra:
            raise FactFormatError(f"unknown field {sorted(extra)[0]!r}", record=where)
    for name in required:
        if name not in obj:
            raise FactFormatError(f"missing required field {name!r}", record=where)


def _string(value, where) -> str:
    if not isinstance(value, str) or not value:
        raise FactFormatError("expected a non-empty string", record=where)
    return value


def _natural(value, where, minimum=0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise FactFormatError(f"expected an integer >= {minimum}", record=where)
    return value


def load_snapshot(source: Source, *, strict: bool = True) -> SystemSnapshot:
    """Parse and validate one fact file (path, bytes, or binary stream)."""
    raw = _read_bytes(source)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FactFormatError(f"not valid UTF-8: {exc.reason}", record=f"byte {exc.start}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FactFormatError(exc.msg, line=exc.lineno, column=exc.colno) from None

    _check_fields(doc, _TOP_FIELDS, ("version", "classes"), "document", strict)
    version = _string(doc["version"], "version")

    meta = doc.get("metadata", {})
    _check_fields(meta, _META_FIELDS, (), "metadata", strict)
    num_methods = meta.get("num_methods")
    loc = meta.get("lines_of_code")
    generator = meta.get("generator")
    if num_methods is not None:
        _natural(num_methods, "metadata.num_methods")
    if loc is not None:
        _natural(loc, "metadata.lines_of_code")
    if generator is not None:
        _string(generator, "metadata.generator")
    metadata = SnapshotMetadata(version, num_methods, loc, generator)

    classes = doc["classes"]
    if not isinstance(classes, list):
        raise FactFormatError("expected an array", record="classes")
    if not classes:
        raise ValidationError("fact file declares no classes")
    assignments: dict[ClassId, dict[str, str]] = {}
    for k, rec in enumerate(classes):
        where = f"classes[{k}]"
        _check_fields(rec, _CLASS_FIELDS, ("id", "modules"), where, strict)
        cls = _string(rec["id"], f"{where}.id")
        if cls in assignments:
            raise ValidationError(f"duplicate class id {cls!r} at {where}")
        modules = rec["modules"]
        if not isinstance(modules, dict) or not modules:
            raise FactFormatError("expected a non-empty object", record=f"{where}.modules")
        assignments[cls] = {
            _string(scheme, f"{where}.modules"): _string(mod, f"{where}.modules.{scheme}")
            for scheme, mod in modules.items()
        }

    invocations = doc.get("invocations", [])
    if not isinstance(invocations, list):
        raise FactFormatError("expected an array", record="invocations")
    edges = []
    for k, rec in enumerate(invocations):
        where = f"invocations[{k}]"
        _check_fields(rec, _EDGE_FIELDS, ("from", "to", "count"), where, strict)
        src = _string(rec["from"], f"{where}.from")
        dst = _string(rec["to"], f"{where}.to")
        count = _natural(rec["count"], f"{where}.count", minimum=1)
        for end in (src, dst):
            if end not in assignments:
                raise ReferentialIntegrityError(f"{where} references undeclared class {end!r}")
        edges.append(InvocationEdge(src, dst, count))

    return build_snapshot(metadata, assignments, edges)


def snapshot_to_dict(s: SystemSnapshot) -> dict:
    meta = {}
    for name in ("num_methods", "lines_of_code", "generator"):
        value = getattr(s.metadata, name)
        if value is not None:
            meta[name] = value
    return {
        "version": s.version,
        "metadata": meta,
        "classes": [
            {"id": c, "modules": {sch.name: sch.membership[c] for sch in s.schemes}}
            for c in s.classes
        ],
        "invocations": [
            {"from": e.source, "to": e.target, "count": e.count} for e in s.invocations
        ],
    }


def dumps_snapshot(s: SystemSnapshot) -> str:
    """Canonical serialization: reloading it yields an equal snapshot."""
    return json.dumps(snapshot_to_dict(s), indent=2, ensure_ascii=False) + "\n"


def dump_snapshot(s: SystemSnapshot, path: str | os.PathLike[str]) -> None:
    with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_snapshot(s))


# -- class dependency graph ----------------------------------------------------


@dataclass(frozen=True)
class ClassDependencyGraph:
    """Binary class-to-class dependency relation, self-loops excluded."""

    vertices: tuple[ClassId, ...]
    edges: tuple[tuple[ClassId, ClassId], ...] = field(default=())

    @cached_property
    def edge_set(self) -> frozenset[tuple[ClassId, ClassId]]:
        return frozenset(self.edges)

    @cached_property
    def successors(self) -> dict[ClassId, tuple[ClassId, ...]]:
        out: dict[ClassId, list[ClassId]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out[u].append(v)
        return {v: tuple(ts) for v, ts in out.items()}

    def __contains__(self, edge: tuple[ClassId, ClassId]) -> bool:
        return edge in self.edge_set


def class_dependency_graph(s: SystemSnapshot) -> ClassDependencyGraph:
    """c1 depends on c2 iff at least one invocation c1 -> c2 exists and c1 != c2."""
    edges = sorted({(e.source, e.target) for e in s.invocations if e.source != e.target})
    return ClassDependencyGraph(s.classes, tuple(edges))
