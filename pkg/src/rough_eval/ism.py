"""Information systems, attribute metadata and the evaluation index config.

An information system is a complete table of objects by attributes. Numeric
attributes carry the attainable ``range`` used by the proximity kernel and a
polarity; categorical attributes carry their labels best first.

Config files are YAML, schema version 1::

    version: 1
    alpha: 0.85
    log_base: 10
    comment_labels: [Very good, Good, Average]
    redundancy_epsilon: 1.0e-9
    top_grade_overrides: {Fee: 2}        # optional
    levels:
      - id: "1"
        alpha: 0.85                      # optional per-level override
        scale: 3                         # optional grade-scale override
        reference_scores: {i1: 3}        # optional, compared against W_r
        attributes:
          - {name: IC, kind: numeric, range: 250, polarity: higher-better}
          - {name: CC, kind: categorical, labels: [Very good, Good, Average]}
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union

import yaml

from .errors import (
    ConfigError,
    DuplicateObjectId,
    MalformedValue,
    MissingCell,
    OutOfRange,
    OverlappingLevels,
    UncoveredAttribute,
    UnknownAttribute,
    UnknownLabel,
    ValidationError,
)

CONFIG_VERSION = 1

DEFAULT_COMMENT_LABELS = ("Very good", "Good", "Average", "Poor", "Very poor")

Value = Union[float, str]


class Kind(str, Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


class Polarity(str, Enum):
    HIGHER_BETTER = "higher-better"
    LOWER_BETTER = "lower-better"


@dataclass(frozen=True)
class AttributeSpec:
    """Metadata for one attribute (a secondary evaluation index)."""

    name: str
    kind: Kind = Kind.NUMERIC
    range: float | None = None
    polarity: Polarity = Polarity.HIGHER_BETTER
    level: str = ""
    label_order: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "polarity", Polarity(self.polarity))
        object.__setattr__(self, "label_order", tuple(self.label_order))
        if not self.name:
            raise ConfigError("attribute name must be non-empty")
        if self.kind is Kind.NUMERIC:
            if self.range is None or not (self.range > 0) or math.isinf(self.range):
                raise ConfigError(f"numeric attribute {self.name!r} needs a finite range > 0")
            object.__setattr__(self, "range", float(self.range))
        else:
            if not self.label_order:
                raise ConfigError(f"categorical attribute {self.name!r} needs a non-empty label order")
            if len(set(self.label_order)) != len(self.label_order):
                raise ConfigError(f"categorical attribute {self.name!r} has duplicate labels")

    @property
    def is_numeric(self) -> bool:
        return self.kind is Kind.NUMERIC

    def check_value(self, value: Value, obj: str = "?") -> None:
        if self.is_numeric:
            if not (0.0 <= value <= self.range):
                raise OutOfRange(
                    f"{self.name}={value!r} for object {obj!r} outside [0, {self.range:g}]"
                )
        elif value not in self.label_order:
            raise UnknownLabel(f"{self.name}={value!r} for object {obj!r} not in {list(self.label_order)}")


@dataclass(frozen=True)
class InformationSystem:
    """Objects x attributes with a total value map.

    ``objects`` keeps file order; every report preserves it.
    """

    objects: tuple[str, ...]
    attributes: tuple[AttributeSpec, ...]
    values: Mapping[tuple[str, str], Value] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        if len(set(self.objects)) != len(self.objects):
            raise DuplicateObjectId("duplicate object ids in information system")
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ConfigError("duplicate attribute names")
        for a in self.attributes:
            for o in self.objects:
                if (o, a.name) not in self.values:
                    raise MissingCell(f"no value for object {o!r}, attribute {a.name!r}")
                a.check_value(self.values[o, a.name], o)

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def attribute(self, name: str) -> AttributeSpec:
        for a in self.attributes:
            if a.name == name:
                return a
        raise UnknownAttribute(f"unknown attribute {name!r}")

    def value(self, obj: str, attr: str) -> Value:
        return self.values[obj, attr]

    def column(self, attr: str) -> dict[str, Value]:
        """Values of one attribute keyed by object id, in object order."""
        self.attribute(attr)
        return {o: self.values[o, attr] for o in self.objects}

    def restrict(self, attrs: Iterable[str]) -> "InformationSystem":
        keep = [self.attribute(a) for a in attrs]
        values = {(o, a.name): self.values[o, a.name] for o in self.objects for a in keep}
        return InformationSystem(self.objects, tuple(keep), values)

    def to_csv(self, id_header: str = "id") -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([id_header, *self.attribute_names])
        for o in self.objects:
            w.writerow([o, *(_format_cell(self.values[o, a]) for a in self.attribute_names)])
        return buf.getvalue()


def _format_cell(v: Value) -> str:
    if isinstance(v, str):
        return v
    text = repr(float(v))
    return text[:-2] if text.endswith(".0") else text


# Lower ranks are reported first when several problems exist, so the reported
# error does not depend on row order.
_ISSUE_RANK = {DuplicateObjectId: 0, MissingCell: 1, MalformedValue: 2, OutOfRange: 3, UnknownLabel: 4}


def load_information_system(csv_text: str, specs: Sequence[AttributeSpec]) -> InformationSystem:
    """Parse and validate a CSV table against attribute specs.

    The first column holds object ids; the remaining header cells must name
    exactly the attributes in ``specs`` (any order). Raises the
    highest-priority problem found: DuplicateObjectId, MissingCell,
    MalformedValue, OutOfRange, UnknownLabel.
    """
    rows = [r for r in csv.reader(io.StringIO(csv_text)) if any(c.strip() for c in r)]
    if not rows:
        raise MissingCell("empty input: no header row")
    header = [h.strip() for h in rows[0]]
    if len(header) < 2:
        raise MissingCell("header names no attributes")
    by_name = {s.name: s for s in specs}
    columns = header[1:]
    for name in columns:
        if name not in by_name:
            raise UnknownAttribute(f"column {name!r} has no attribute spec")
    if len(set(columns)) != len(columns):
        raise ConfigError("duplicate column names in header")
    absent = [s.name for s in specs if s.name not in columns]
    if absent:
        raise MissingCell(f"no column for attribute(s) {absent}")
    body = rows[1:]
    if not body:
        raise MissingCell("empty input: no objects")

    issues: list[tuple[int, str, int, ValidationError]] = []
    seen: dict[str, int] = {}
    values: dict[tuple[str, str], Value] = {}
    objects: list[str] = []
    for row in body:
        obj = row[0].strip()
        if not obj:
            issues.append((_ISSUE_RANK[MissingCell], obj, -1, MissingCell("row with empty object id")))
            continue
        if obj in seen:
            issues.append((_ISSUE_RANK[DuplicateObjectId], obj, -1, DuplicateObjectId(f"duplicate object id {obj!r}")))
            continue
        seen[obj] = len(objects)
        objects.append(obj)
        if len(row) - 1 > len(columns):
            issues.append((_ISSUE_RANK[MissingCell], obj, -1, MissingCell(f"row {obj!r} has {len(row) - 1} cells, expected {len(columns)}")))
        for j, name in enumerate(columns):
            raw = row[j + 1].strip() if j + 1 < len(row) else ""
            if raw == "":
                issues.append((_ISSUE_RANK[MissingCell], obj, j, MissingCell(f"empty cell: object {obj!r}, attribute {name!r}")))
                continue
            spec = by_name[name]
            if spec.is_numeric:
                try:
                    v: Value = float(raw)
                except ValueError:
                    issues.append((_ISSUE_RANK[MalformedValue], obj, j, MalformedValue(f"{name}={raw!r} for object {obj!r} is not a number")))
                    continue
            else:
                v = raw
            try:
                spec.check_value(v, obj)
            except ValidationError as exc:
                issues.append((_ISSUE_RANK[type(exc)], obj, j, exc))
                continue
            values[obj, name] = v
    if issues:
        issues.sort(key=lambda t: (t[0], t[1], t[2]))
        exc = issues[0][3]
        if len(issues) > 1:
            exc.args = (f"{exc.args[0]} (+{len(issues) - 1} more problem(s))",)
        raise exc
    ordered = tuple(by_name[c] for c in columns)
    return InformationSystem(tuple(objects), ordered, values)


@dataclass(frozen=True)
class LevelSpec:
    """One primary evaluation index: a named group of attributes."""

    id: str
    attributes: tuple[str, ...]
    alpha: float | None = None
    scale: int | None = None
    reference_scores: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        if not self.attributes:
            raise ConfigError(f"level {self.id!r} has no attributes")
        if self.alpha is not None and not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"level {self.id!r}: alpha must lie in [0, 1]")
        if self.scale is not None and self.scale < 1:
            raise ConfigError(f"level {self.id!r}: scale must be >= 1")


@dataclass(frozen=True)
class EvaluationConfig:
    levels: tuple[LevelSpec, ...]
    alpha: float = 0.85
    log_base: float = 10.0
    comment_labels: tuple[str, ...] = DEFAULT_COMMENT_LABELS
    redundancy_epsilon: float = 1e-9
    top_grade_overrides: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "comment_labels", tuple(self.comment_labels))
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("alpha must lie in [0, 1]")
        if not self.log_base > 1.0:
            raise ConfigError("log_base must be > 1")
        if not self.redundancy_epsilon > 0:
            raise ConfigError("redundancy_epsilon must be > 0")
        if not self.comment_labels:
            raise ConfigError("comment_labels must be non-empty")
        ids = [lv.id for lv in self.levels]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate level ids")

    def level(self, level_id: str) -> LevelSpec:
        for lv in self.levels:
            if lv.id == str(level_id):
                return lv
        raise ConfigError(f"unknown level {level_id!r}")

    def alpha_for(self, level_id: str) -> float:
        lv = self.level(level_id)
        return self.alpha if lv.alpha is None else lv.alpha

    def label_for(self, grade: int, scale: int) -> str:
        """Comment label of ``grade`` on a scale of ``scale`` (best = scale)."""
        idx = scale - grade
        if idx < len(self.comment_labels):
            return self.comment_labels[idx]
        return f"Grade {grade}"

    def with_overrides(self, **kw) -> "EvaluationConfig":
        """Copy with the non-None keyword values replaced."""
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def validate_config(config: EvaluationConfig, system: InformationSystem) -> None:
    """Check the levels are disjoint and cover exactly the system's attributes."""
    names = set(system.attribute_names)
    owner: dict[str, str] = {}
    for lv in config.levels:
        for a in lv.attributes:
            if a not in names:
                raise UnknownAttribute(f"level {lv.id!r} references unknown attribute {a!r}")
            if a in owner:
                raise OverlappingLevels(f"attribute {a!r} appears in levels {owner[a]!r} and {lv.id!r}")
            owner[a] = lv.id
    uncovered = [a for a in system.attribute_names if a not in owner]
    if uncovered:
        raise UncoveredAttribute(f"attribute(s) {uncovered} belong to no level")
    for a, g in config.top_grade_overrides.items():
        if a not in names:
            raise UnknownAttribute(f"top_grade_overrides references unknown attribute {a!r}")


def _spec_from_mapping(d: Mapping, level_id: str) -> AttributeSpec:
    if not isinstance(d, Mapping) or "name" not in d:
        raise ConfigError(f"attribute entry in level {level_id!r} needs a name")
    unknown = set(d) - {"name", "kind", "range", "polarity", "labels"}
    if unknown:
        raise ConfigError(f"attribute {d['name']!r}: unknown key(s) {sorted(unknown)}")
    try:
        return AttributeSpec(
            name=str(d["name"]),
            kind=Kind(d.get("kind", "numeric")),
            range=d.get("range"),
            polarity=Polarity(d.get("polarity", "higher-better")),
            level=level_id,
            label_order=tuple(str(x) for x in d.get("labels", ())),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"attribute {d['name']!r}: {exc}") from None


def load_config(text: str) -> tuple[EvaluationConfig, list[AttributeSpec]]:
    """Parse a YAML config into the evaluation config and attribute specs."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from None
    if not isinstance(doc, Mapping):
        raise ConfigError("config must be a mapping")
    version = doc.get("version")
    if version != CONFIG_VERSION:
        raise ConfigError(f"unsupported config version {version!r} (expected {CONFIG_VERSION})")
    raw_levels = doc.get("levels")
    if not isinstance(raw_levels, list) or not raw_levels:
        raise ConfigError("config needs a non-empty 'levels' list")
    specs: list[AttributeSpec] = []
    levels: list[LevelSpec] = []
    for raw in raw_levels:
        if not isinstance(raw, Mapping) or "id" not in raw:
            raise ConfigError("each level needs an 'id'")
        lid = str(raw["id"])
        level_specs = [_spec_from_mapping(d, lid) for d in raw.get("attributes") or ()]
        specs.extend(level_specs)
        levels.append(
            LevelSpec(
                id=lid,
                attributes=tuple(s.name for s in level_specs),
                alpha=raw.get("alpha"),
                scale=raw.get("scale"),
                reference_scores={str(k): float(v) for k, v in (raw.get("reference_scores") or {}).items()},
            )
        )
    kw = {}
    for key in ("alpha", "log_base", "redundancy_epsilon"):
        if key in doc:
            kw[key] = float(doc[key])
    if "comment_labels" in doc:
        kw["comment_labels"] = tuple(str(x) for x in doc["comment_labels"])
    if "top_grade_overrides" in doc:
        kw["top_grade_overrides"] = {str(k): int(v) for k, v in doc["top_grade_overrides"].items()}
    return EvaluationConfig(levels=tuple(levels), **kw), specs
