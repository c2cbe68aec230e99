"""Partition entropy, drop-one attribute significance and weighting coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import AllRedundant, UnknownAttribute, ValidationError
from .proximity import Partition
from .roughset import joint_partition


def partition_entropy(p: Partition, log_base: float = 10.0) -> float:
    """-sum(|X|/n * log(|X|/n)) over the blocks X of ``p``."""
    if not log_base > 1.0:
        raise ValidationError("log_base must be > 1")
    n = len(p.universe)
    if n == 0:
        raise ValidationError("entropy of an empty partition is undefined")
    ln_base = math.log(log_base)
    h = -math.fsum((len(b) / n) * math.log(len(b) / n) for b in p.blocks) / ln_base
    return h + 0.0  # turn -0.0 into 0.0


def _meet_without(parts_by_attr: Mapping[str, Partition], drop: str | None) -> Partition:
    universe = next(iter(parts_by_attr.values())).universe
    return joint_partition([q for a, q in parts_by_attr.items() if a != drop], universe=universe)


def significance(parts_by_attr: Mapping[str, Partition], a: str, log_base: float = 10.0) -> float:
    """|H(A) - H(A - {a})| where A is the set of attributes in ``parts_by_attr``."""
    if a not in parts_by_attr:
        raise UnknownAttribute(f"unknown attribute {a!r}")
    h_full = partition_entropy(_meet_without(parts_by_attr, None), log_base)
    h_drop = partition_entropy(_meet_without(parts_by_attr, a), log_base)
    return abs(h_full - h_drop)


def weighting_coefficients(
    sgf: Mapping[str, float], eps: float = 1e-9
) -> tuple[dict[str, float], tuple[str, ...]]:
    """Normalise the significances of the non-redundant attributes.

    Returns ``(weights, redundant)``; an attribute is redundant when its
    significance is <= ``eps``.
    """
    redundant = tuple(a for a, v in sgf.items() if v <= eps)
    kept = {a: v for a, v in sgf.items() if v > eps}
    if not kept:
        raise AllRedundant("every attribute has zero significance; nothing to weight")
    total = math.fsum(kept.values())
    return {a: v / total for a, v in kept.items()}, redundant


@dataclass(frozen=True)
class WeightReport:
    h_full: float
    h_drop: dict[str, float]
    sgf: dict[str, float]
    redundant: tuple[str, ...]
    weights: dict[str, float]
    joint: Partition
    drop_partitions: dict[str, Partition]

    @property
    def retained(self) -> tuple[str, ...]:
        return tuple(self.weights)


def weight_report(
    parts_by_attr: Mapping[str, Partition], log_base: float = 10.0, eps: float = 1e-9
) -> WeightReport:
    """Entropies, significances and weights for one attribute group."""
    if not parts_by_attr:
        raise ValidationError("no attributes to weigh")
    joint = _meet_without(parts_by_attr, None)
    h_full = partition_entropy(joint, log_base)
    drops = {a: _meet_without(parts_by_attr, a) for a in parts_by_attr}
    h_drop = {a: partition_entropy(q, log_base) for a, q in drops.items()}
    sgf = {a: abs(h_full - h) for a, h in h_drop.items()}
    weights, redundant = weighting_coefficients(sgf, eps)
    return WeightReport(h_full, h_drop, sgf, redundant, weights, joint, drops)
