"""Serialisation of evaluation results: JSON (versioned), CSV and text tables."""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Sequence

from . import __version__
from .entropy import WeightReport
from .ordering import GradedTable
from .pipeline import EvaluationReport, LevelResult, rank_within_level
from .proximity import Partition

REPORT_SCHEMA_VERSION = 1


def round3(x: float) -> float:
    """Round half away from zero to 3 places."""
    return float(Decimal(repr(float(x))).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def _r3(d: dict[str, float]) -> dict[str, float]:
    return {k: round3(v) for k, v in d.items()}


def _blocks(p: Partition | Sequence[Sequence[str]]) -> list[list[str]]:
    return [list(b) for b in p]


def weights_to_dict(wr: WeightReport) -> dict[str, Any]:
    return {
        "joint_partition": _blocks(wr.joint),
        "drop_partitions": {a: _blocks(q) for a, q in wr.drop_partitions.items()},
        "entropy": {
            "full": wr.h_full,
            "full_3dp": round3(wr.h_full),
            "drop": dict(wr.h_drop),
            "drop_3dp": _r3(wr.h_drop),
        },
        "sgf": dict(wr.sgf),
        "sgf_3dp": _r3(wr.sgf),
        "redundant": list(wr.redundant),
        "weights": dict(wr.weights),
        "weights_3dp": _r3(wr.weights),
    }


def level_to_dict(r: LevelResult) -> dict[str, Any]:
    g = r.graded
    out: dict[str, Any] = {
        "level": r.level,
        "alpha": r.alpha,
        "scale": r.scale,
        "attributes": list(g.attributes),
        "partitions": {a: _blocks(p) for a, p in r.partitions.items()},
        "class_order": {a: _blocks(c) for a, c in r.ordered_classes.items()},
        "grades": {o: {a: g.grade(o, a) for a in g.attributes} for o in g.objects},
        "labels": {o: {a: g.label(o, a) for a in g.attributes} for o in g.objects},
    }
    out.update(weights_to_dict(r.weight_report))
    out["scores"] = dict(r.scores)
    out["scores_3dp"] = _r3(r.scores)
    out["ranking"] = [{"object": o, "rank": k} for o, k in rank_within_level(r)]
    out["diagnostics"] = [{"code": d.code, "message": d.message} for d in r.diagnostics]
    return out


def report_to_dict(report: EvaluationReport, config_echo: dict[str, Any] | None = None) -> dict[str, Any]:
    config = {"alpha": report.alpha, "log_base": report.log_base}
    config.update(config_echo or {})
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "meta": {"tool": "rough-eval", "version": __version__},
        "config": config,
        "objects": list(report.objects),
        "levels": [level_to_dict(r) for r in report.levels],
        "score_table": report.score_table(),
    }


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def scores_csv(report: EvaluationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", *(f"level_{r.level}" for r in report.levels)])
    for o, row in report.score_table().items():
        w.writerow([o, *(repr(v) for v in row.values())])
    return buf.getvalue()


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def format_blocks(p: Partition | Sequence[Sequence[str]]) -> str:
    return "{ " + ", ".join("{" + ", ".join(b) + "}" for b in p) + " }"


def graded_table_text(g: GradedTable) -> str:
    return _table(["Object", *g.attributes], [[o, *(g.cell(o, a) for a in g.attributes)] for o in g.objects])


def weights_text(wr: WeightReport) -> str:
    rows = [
        [a, f"{wr.h_drop[a]:.3f}", f"{wr.sgf[a]:.3f}", f"{wr.weights[a]:.3f}" if a in wr.weights else "redundant"]
        for a in wr.h_drop
    ]
    head = f"H(A) = {wr.h_full:.3f}\n"
    return head + _table(["Attribute", "H(A-{a})", "SGF", "Weight"], rows)


def level_text(r: LevelResult) -> str:
    parts = [f"Level {r.level}  (alpha={r.alpha:g}, grade scale={r.scale})", ""]
    parts.append(weights_text(r.weight_report))
    ranked = rank_within_level(r)
    parts.append(_table(["Rank", "Object", "Score"], [[k, o, f"{r.scores[o]:.3f}"] for o, k in ranked]))
    if r.diagnostics:
        parts.append("Diagnostics:")
        parts.extend(f"  [{d.code}] {d.message}" for d in r.diagnostics)
        parts.append("")
    return "\n".join(parts)


def report_text(report: EvaluationReport) -> str:
    chunks = [f"alpha={report.alpha:g}  log_base={report.log_base:g}\n"]
    chunks.extend(level_text(r) for r in report.levels)
    table = report.score_table()
    levels = [r.level for r in report.levels]
    chunks.append("Scores by level\n" + _table(
        ["Object", *(f"L{lv}" for lv in levels)],
        [[o, *(f"{table[o][lv]:.3f}" for lv in levels)] for o in report.objects],
    ))
    return "\n".join(chunks)
