"""Fuzzy proximity matrices and alpha-identical partitions.

A proximity relation is reflexive and symmetric but not transitive. Two
objects are alpha-similar when their degree is >= alpha, and alpha-identical
when a chain of alpha-similar pairs links them. The alpha-identical classes
are the connected components of the thresholded graph, found with union-find.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import OutOfRange, UnknownObject, ValidationError
from .ism import AttributeSpec, Kind, Value


class UnionFind:
    """Disjoint sets over ``range(n)`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering ``universe``, kept in canonical order.

    Members of a block follow universe order and blocks are sorted by their
    first member's position, so equal partitions compare equal.
    """

    universe: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        universe = tuple(self.universe)
        pos = {o: i for i, o in enumerate(universe)}
        if len(pos) != len(universe):
            raise ValidationError("partition universe has duplicate ids")
        seen: set[str] = set()
        blocks = []
        for b in self.blocks:
            b = tuple(b)
            if not b:
                raise ValidationError("partition has an empty block")
            for o in b:
                if o not in pos:
                    raise UnknownObject(f"block member {o!r} not in universe")
                if o in seen:
                    raise ValidationError(f"object {o!r} appears in two blocks")
                seen.add(o)
            blocks.append(tuple(sorted(b, key=pos.__getitem__)))
        if len(seen) != len(universe):
            missing = [o for o in universe if o not in seen]
            raise ValidationError(f"partition does not cover {missing}")
        blocks.sort(key=lambda b: pos[b[0]])
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def from_keys(cls, universe: Sequence[str], keys: Sequence[Hashable]) -> "Partition":
        """Group objects sharing the same key."""
        groups: dict[Hashable, list[str]] = {}
        for o, k in zip(universe, keys, strict=True):
            groups.setdefault(k, []).append(o)
        return cls(tuple(universe), tuple(tuple(g) for g in groups.values()))

    @classmethod
    def trivial(cls, universe: Sequence[str]) -> "Partition":
        """The one-block partition (identity of the meet)."""
        universe = tuple(universe)
        return cls(universe, (universe,) if universe else ())

    @classmethod
    def discrete(cls, universe: Sequence[str]) -> "Partition":
        universe = tuple(universe)
        return cls(universe, tuple((o,) for o in universe))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.blocks)

    @cached_property
    def block_index(self) -> dict[str, int]:
        return {o: i for i, b in enumerate(self.blocks) for o in b}

    def block_of(self, obj: str) -> tuple[str, ...]:
        try:
            return self.blocks[self.block_index[obj]]
        except KeyError:
            raise UnknownObject(f"unknown object {obj!r}") from None

    def as_sets(self) -> set[frozenset[str]]:
        return {frozenset(b) for b in self.blocks}

    def refines(self, other: "Partition") -> bool:
        """True if every block of self lies inside a block of other."""
        idx = other.block_index
        return all(len({idx[o] for o in b}) == 1 for b in self.blocks)

    def to_lists(self) -> list[list[str]]:
        return [list(b) for b in self.blocks]


# A kernel maps the per-object values of one attribute to an n x n degree array.
Kernel = Callable[[Sequence[Value], AttributeSpec], np.ndarray]


def range_kernel(values: Sequence[Value], spec: AttributeSpec) -> np.ndarray:
    """1 - |v_i - v_j| / range."""
    v = np.asarray(values, dtype=float)
    m = 1.0 - np.abs(v[:, None] - v[None, :]) / spec.range
    if m.size and m.min() < 0.0:
        raise OutOfRange(f"values of {spec.name!r} span more than its range {spec.range:g}")
    return m


def exact_match_kernel(values: Sequence[Value], spec: AttributeSpec) -> np.ndarray:
    """1 for equal labels, 0 otherwise."""
    v = np.asarray(values, dtype=object)
    return (v[:, None] == v[None, :]).astype(float)


KERNELS: dict[Kind, Kernel] = {
    Kind.NUMERIC: range_kernel,
    Kind.CATEGORICAL: exact_match_kernel,
}


@dataclass(frozen=True, eq=False)
class ProximityMatrix:
    """Symmetric reflexive matrix of similarity degrees in [0, 1]."""

    objects: tuple[str, ...]
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        objects = tuple(self.objects)
        m = np.array(self.entries, dtype=float)
        n = len(objects)
        if m.shape != (n, n):
            raise ValidationError(f"matrix shape {m.shape} does not match {n} objects")
        if n and (np.any(np.diag(m) != 1.0) or np.any(m != m.T) or m.min() < 0.0 or m.max() > 1.0):
            raise ValidationError("proximity matrix must be reflexive, symmetric, with entries in [0, 1]")
        m.setflags(write=False)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return len(self.objects)

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {o: i for i, o in enumerate(self.objects)}

    def entry(self, x: str, y: str) -> float:
        try:
            return float(self.entries[self._pos[x], self._pos[y]])
        except KeyError as exc:
            raise UnknownObject(f"unknown object {exc.args[0]!r}") from None

    def to_csv(self, decimals: int = 3) -> str:
        """Render with round-half-away-from-zero at ``decimals`` places."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["", *self.objects])
        for o, row in zip(self.objects, self.entries):
            w.writerow([o, *(format_degree(x, decimals) for x in row)])
        return buf.getvalue()


def format_degree(x: float, decimals: int = 3) -> str:
    q = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def build_proximity(
    values: Mapping[str, Value], spec: AttributeSpec, kernel: Kernel | None = None
) -> ProximityMatrix:
    """Proximity matrix of one attribute; ``values`` maps object id -> value."""
    objects = tuple(values)
    vals = [values[o] for o in objects]
    for o, v in zip(objects, vals):
        spec.check_value(v, o)
    kernel = kernel or KERNELS[spec.kind]
    return ProximityMatrix(objects, kernel(vals, spec))


def alpha_partition(m: ProximityMatrix, alpha: float) -> Partition:
    """Alpha-identical classes: components of the graph with edges where degree >= alpha."""
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha={alpha!r} outside [0, 1]")
    n = m.n
    uf = UnionFind(n)
    rows, cols = np.nonzero(np.triu(m.entries >= alpha, k=1))
    for i, j in zip(rows.tolist(), cols.tolist()):
        uf.union(i, j)
    return Partition.from_keys(m.objects, [uf.find(i) for i in range(n)])


def attribute_partitions(
    system, attrs: Iterable[str], alpha: float
) -> dict[str, Partition]:
    """Alpha-partition of every attribute in ``attrs`` of an InformationSystem."""
    return {
        a: alpha_partition(build_proximity(system.column(a), system.attribute(a)), alpha)
        for a in attrs
    }
