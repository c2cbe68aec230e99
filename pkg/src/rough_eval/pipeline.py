"""Per-level evaluation: classify, order, grade, weigh and score.

For each level the attributes are classified by their alpha-identical
partitions, the classes are ordered and graded, the drop-one entropies give
the significance of each attribute, and every object's score is the
weighted sum of its grades over the non-redundant attributes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .entropy import WeightReport, weight_report
from .ism import EvaluationConfig, InformationSystem, validate_config
from .ordering import Block, GradedTable, assign_grades, order_classes
from .proximity import Partition, attribute_partitions

# Scores closer than this to a reference value are not flagged.
REFERENCE_TOLERANCE = 5e-4


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str


@dataclass(frozen=True)
class LevelResult:
    level: str
    alpha: float
    scale: int
    partitions: dict[str, Partition]
    ordered_classes: dict[str, list[Block]]
    graded: GradedTable
    weight_report: WeightReport
    scores: dict[str, float]
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def weights(self) -> dict[str, float]:
        return self.weight_report.weights

    @property
    def redundant(self) -> tuple[str, ...]:
        return self.weight_report.redundant


@dataclass(frozen=True)
class EvaluationReport:
    alpha: float
    log_base: float
    objects: tuple[str, ...]
    levels: list[LevelResult]

    def level(self, level_id: str) -> LevelResult:
        for r in self.levels:
            if r.level == str(level_id):
                return r
        raise KeyError(level_id)

    def score_table(self) -> dict[str, dict[str, float]]:
        """object -> level -> score, the cross-level comparison data."""
        return {o: {r.level: r.scores[o] for r in self.levels} for o in self.objects}


def score_objects(graded: GradedTable, weights: dict[str, float]) -> dict[str, float]:
    """W_r = sum of weight * grade over the weighted attributes."""
    return {o: math.fsum(w * graded.grade(o, a) for a, w in weights.items()) for o in graded.objects}


def run_level(system: InformationSystem, config: EvaluationConfig, level: str) -> LevelResult:
    lv = config.level(level)
    alpha = config.alpha_for(lv.id)
    parts = attribute_partitions(system, lv.attributes, alpha)
    ordered = {a: order_classes(parts[a], system.column(a), system.attribute(a)) for a in lv.attributes}
    scale = lv.scale if lv.scale is not None else max(len(c) for c in ordered.values())
    overrides = {a: g for a, g in config.top_grade_overrides.items() if a in ordered}
    graded = assign_grades(ordered, scale, config.comment_labels, system.objects, overrides)
    wr = weight_report(parts, config.log_base, config.redundancy_epsilon)
    scores = score_objects(graded, wr.weights)

    notes: list[Diagnostic] = []
    for a, classes in ordered.items():
        if len(classes) == 1:
            notes.append(Diagnostic("single-class", f"attribute {a} forms a single class at alpha={alpha:g}"))
    for a, g in overrides.items():
        notes.append(Diagnostic("top-grade-override", f"attribute {a} best class graded {g} instead of {scale}"))
    for a in wr.redundant:
        notes.append(Diagnostic("redundant", f"attribute {a} has zero significance and is not weighted"))
    for o, ref in lv.reference_scores.items():
        if o not in scores:
            notes.append(Diagnostic("reference-unknown-object", f"reference score given for unknown object {o}"))
        elif abs(scores[o] - ref) > REFERENCE_TOLERANCE:
            notes.append(
                Diagnostic(
                    "reference-mismatch",
                    f"W({o})={scores[o]:.3f} recomputed from grades and weights; reference value {ref:g} differs",
                )
            )
    return LevelResult(lv.id, alpha, scale, parts, ordered, graded, wr, scores, notes)


def run_all(system: InformationSystem, config: EvaluationConfig) -> EvaluationReport:
    validate_config(config, system)
    results = [run_level(system, config, lv.id) for lv in config.levels]
    return EvaluationReport(config.alpha, config.log_base, system.objects, results)


def rank_within_level(result: LevelResult, decimals: int = 9) -> list[tuple[str, int]]:
    """Objects by descending score with competition ranks (ties share a rank).

    Scores equal after rounding to ``decimals`` places are tied; ties keep
    input order.
    """
    objects = list(result.graded.objects)
    key = {o: round(result.scores[o], decimals) for o in objects}
    ordered = sorted(objects, key=lambda o: -key[o])  # stable: ties stay in input order
    ranked: list[tuple[str, int]] = []
    for i, o in enumerate(ordered):
        if i and key[o] == key[ordered[i - 1]]:
            ranked.append((o, ranked[-1][1]))
        else:
            ranked.append((o, i + 1))
    return ranked


def tie_groups(ranked: list[tuple[str, int]]) -> list[list[str]]:
    groups: dict[int, list[str]] = {}
    for o, r in ranked:
        groups.setdefault(r, []).append(o)
    return list(groups.values())
