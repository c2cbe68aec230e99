"""Lower/upper approximations and the almost-indiscernibility partition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable, Sequence

from .errors import UniverseMismatch, UnknownObject, ValidationError
from .proximity import Partition


@dataclass(frozen=True)
class ApproximationPair:
    lower: frozenset[str]
    upper: frozenset[str]

    @property
    def discernible(self) -> bool:
        """X is alpha-discernible iff both approximations coincide."""
        return self.lower == self.upper

    @property
    def boundary(self) -> frozenset[str]:
        return self.upper - self.lower


def _check_subset(p: Partition, x: AbstractSet[str]) -> None:
    unknown = set(x) - set(p.universe)
    if unknown:
        raise UnknownObject(f"object(s) {sorted(unknown)} not in universe")


def lower_approximation(p: Partition, x: Iterable[str]) -> frozenset[str]:
    """Union of the blocks of ``p`` contained in ``x``."""
    x = frozenset(x)
    _check_subset(p, x)
    return frozenset(o for b in p.blocks if x.issuperset(b) for o in b)


def upper_approximation(p: Partition, x: Iterable[str]) -> frozenset[str]:
    """Union of the blocks of ``p`` meeting ``x``."""
    x = frozenset(x)
    _check_subset(p, x)
    return frozenset(o for b in p.blocks if not x.isdisjoint(b) for o in b)


def approximate(p: Partition, x: Iterable[str]) -> ApproximationPair:
    x = frozenset(x)
    return ApproximationPair(lower_approximation(p, x), upper_approximation(p, x))


def joint_partition(parts: Sequence[Partition], universe: Sequence[str] | None = None) -> Partition:
    """Meet of partitions: objects share a block iff they share one in every input.

    Each object is keyed on its tuple of block indices. With no inputs the
    one-block partition over ``universe`` is returned.
    """
    parts = list(parts)
    if not parts:
        if universe is None:
            raise ValidationError("joint_partition of no partitions needs a universe")
        return Partition.trivial(universe)
    base = parts[0].universe
    if universe is not None and tuple(universe) != base:
        raise UniverseMismatch("explicit universe differs from the partitions' universe")
    for q in parts[1:]:
        if q.universe != base:
            if set(q.universe) == set(base) and len(q.universe) == len(base):
                continue
            raise UniverseMismatch("partitions are over different universes")
    indices = [q.block_index for q in parts]
    return Partition.from_keys(base, [tuple(idx[o] for idx in indices) for o in base])
