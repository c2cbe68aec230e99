"""Ordered information systems: class ordering, grades and dominance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import AmbiguousCategory, ScaleTooSmall, UnknownAttribute, UnknownObject
from .ism import DEFAULT_COMMENT_LABELS, AttributeSpec, Polarity, Value
from .proximity import Partition

Block = tuple[str, ...]


def order_classes(p: Partition, values: Mapping[str, Value], spec: AttributeSpec) -> list[Block]:
    """Blocks of ``p`` sorted best first.

    Numeric blocks are ranked by the mean of their raw values (descending for
    higher-better, ascending for lower-better); categorical blocks by the
    position of their label in ``spec.label_order``. Ties keep partition order,
    i.e. the block whose first member comes first in the universe wins.
    """
    if spec.is_numeric:
        means = [math.fsum(values[o] for o in b) / len(b) for b in p.blocks]
        sign = -1.0 if spec.polarity is Polarity.HIGHER_BETTER else 1.0
        keys = [sign * m for m in means]
    else:
        rank = {lab: i for i, lab in enumerate(spec.label_order)}
        keys = []
        for b in p.blocks:
            labels = {values[o] for o in b}
            if len(labels) != 1:
                raise AmbiguousCategory(f"block {list(b)} of {spec.name!r} mixes labels {sorted(labels)}")
            keys.append(rank[labels.pop()])
    order = sorted(range(len(p.blocks)), key=lambda i: keys[i])
    return [p.blocks[i] for i in order]


@dataclass(frozen=True)
class GradedTable:
    """Integer grades in [1, scale] and comment labels per (object, attribute)."""

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    grades: Mapping[tuple[str, str], int] = field(repr=False)
    labels: Mapping[tuple[str, str], str] = field(repr=False)
    scale: int

    def grade(self, obj: str, attr: str) -> int:
        if attr not in self.attributes:
            raise UnknownAttribute(f"unknown attribute {attr!r}")
        try:
            return self.grades[obj, attr]
        except KeyError:
            raise UnknownObject(f"unknown object {obj!r}") from None

    def label(self, obj: str, attr: str) -> str:
        self.grade(obj, attr)
        return self.labels[obj, attr]

    def cell(self, obj: str, attr: str) -> str:
        return f"{self.label(obj, attr)} ({self.grade(obj, attr)})"

    def restrict(self, attrs: Iterable[str]) -> "GradedTable":
        attrs = tuple(attrs)
        for a in attrs:
            if a not in self.attributes:
                raise UnknownAttribute(f"unknown attribute {a!r}")
        keys = [(o, a) for o in self.objects for a in attrs]
        return GradedTable(
            self.objects, attrs, {k: self.grades[k] for k in keys}, {k: self.labels[k] for k in keys}, self.scale
        )


def assign_grades(
    ordered_classes: Mapping[str, Sequence[Block]],
    s: int,
    comment_labels: Sequence[str] = DEFAULT_COMMENT_LABELS,
    objects: Sequence[str] | None = None,
    top_grades: Mapping[str, int] | None = None,
) -> GradedTable:
    """Grade each attribute's classes top-aligned on the scale {s, ..., 1}.

    The best class gets ``s`` (or ``top_grades[attr]`` when given), the next
    one less, and so on. Labels come from ``comment_labels`` best first; a
    grade past the end of the list is labelled ``"Grade g"``.
    """
    top_grades = top_grades or {}
    grades: dict[tuple[str, str], int] = {}
    labels: dict[tuple[str, str], str] = {}
    if objects is None:
        seen: dict[str, None] = {}
        for classes in ordered_classes.values():
            for b in classes:
                seen.update(dict.fromkeys(b))
        objects = tuple(seen)
    for attr, classes in ordered_classes.items():
        top = top_grades.get(attr, s)
        if len(classes) > s or top > s or top - len(classes) + 1 < 1:
            raise ScaleTooSmall(f"attribute {attr!r} has {len(classes)} classes; scale {s} (top grade {top})")
        for k, block in enumerate(classes):
            g = top - k
            idx = s - g
            lab = comment_labels[idx] if idx < len(comment_labels) else f"Grade {g}"
            for o in block:
                grades[o, attr] = g
                labels[o, attr] = lab
    objects = tuple(objects)
    for attr in ordered_classes:
        for o in objects:
            if (o, attr) not in grades:
                raise UnknownObject(f"object {o!r} has no class for attribute {attr!r}")
    return GradedTable(objects, tuple(ordered_classes), grades, labels, s)


def dominates(x: str, y: str, b: Iterable[str], ois: GradedTable, strict: bool = False) -> bool:
    """True if ``x`` is ranked ahead of ``y`` on every attribute in ``b``.

    Equal grades count as "not behind" unless ``strict`` is set.
    """
    attrs = list(b)
    if not attrs:
        raise ValueError("attribute subset must be non-empty")
    for a in attrs:
        gx, gy = ois.grade(x, a), ois.grade(y, a)
        if gx < gy or (strict and gx == gy):
            return False
    return True
