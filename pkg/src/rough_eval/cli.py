"""Command-line interface: ``rough-eval <command> --data CSV --config YAML``.

Exit status is 0 on success, 1 on invalid input (one JSON line on stderr
naming the error), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import RoughEvalError, UnknownAttribute
from .ism import EvaluationConfig, InformationSystem, load_config, load_information_system, validate_config
from .pipeline import EvaluationReport, run_level
from .proximity import alpha_partition, build_proximity
from .report import (
    format_blocks,
    graded_table_text,
    level_to_dict,
    report_text,
    report_to_dict,
    round3,
    scores_csv,
    to_json,
    weights_text,
    weights_to_dict,
)
from .roughset import approximate, joint_partition


def _common(p: argparse.ArgumentParser, formats: Sequence[str] = ("table", "json")) -> None:
    p.add_argument("--data", required=True, type=Path, help="CSV table: id column then one column per attribute")
    p.add_argument("--config", required=True, type=Path, help="YAML evaluation config")
    p.add_argument("--alpha", type=float, help="similarity threshold; overrides config (all levels)")
    p.add_argument("--log-base", type=float, help="entropy logarithm base; overrides config")
    p.add_argument("--format", choices=formats, default="table")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rough-eval",
        description="Score objects level by level from alpha-proximity classes, ordered grades and entropy weights.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("evaluate", help="run the full evaluation (all levels or one)")
    _common(p, ("table", "json", "csv"))
    p.add_argument("--level", help="evaluate a single level")

    p = sub.add_parser("partition", help="alpha-identical classes of one attribute")
    _common(p, ("table", "json", "csv"))
    p.add_argument("--attr", required=True)
    p.add_argument("--dump-matrix", action="store_true", help="also print the proximity matrix (3 decimals)")

    p = sub.add_parser("grade", help="ordered information system of a level")
    _common(p)
    p.add_argument("--level", required=True)

    p = sub.add_parser("entropy", help="entropies, significances and weights of a level")
    _common(p)
    p.add_argument("--level", required=True)

    p = sub.add_parser("approx", help="lower/upper approximation of an object set")
    _common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--attrs", help="comma-separated attribute subset")
    group.add_argument("--level", help="use all attributes of this level")
    p.add_argument("--target", required=True, help="comma-separated object ids")
    return parser


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _load(args) -> tuple[InformationSystem, EvaluationConfig]:
    config, specs = load_config(args.config.read_text(encoding="utf-8"))
    if args.alpha is not None:
        levels = tuple(dataclasses.replace(lv, alpha=None) for lv in config.levels)
        config = dataclasses.replace(config, alpha=args.alpha, levels=levels)
    config = config.with_overrides(log_base=args.log_base)
    system = load_information_system(args.data.read_text(encoding="utf-8"), specs)
    validate_config(config, system)
    return system, config


def _config_echo(config: EvaluationConfig) -> dict:
    return {
        "alpha": config.alpha,
        "log_base": config.log_base,
        "redundancy_epsilon": config.redundancy_epsilon,
        "comment_labels": list(config.comment_labels),
        "level_alpha": {lv.id: config.alpha_for(lv.id) for lv in config.levels},
        "top_grade_overrides": dict(config.top_grade_overrides),
    }


def cmd_evaluate(args, system, config) -> str:
    levels = [config.level(args.level)] if args.level else list(config.levels)
    results = [run_level(system, config, lv.id) for lv in levels]
    report = EvaluationReport(config.alpha, config.log_base, system.objects, results)
    if args.format == "json":
        return to_json(report_to_dict(report, _config_echo(config)))
    if args.format == "csv":
        return scores_csv(report)
    return report_text(report)


def cmd_partition(args, system, config) -> str:
    spec = system.attribute(args.attr)
    alpha = config.alpha if args.alpha is not None else config.alpha_for(spec.level or config.levels[0].id)
    m = build_proximity(system.column(args.attr), spec)
    p = alpha_partition(m, alpha)
    if args.format == "csv":
        return m.to_csv() if args.dump_matrix else "".join(",".join(b) + "\n" for b in p)
    if args.format == "json":
        data = {"attribute": args.attr, "alpha": alpha, "blocks": p.to_lists()}
        if args.dump_matrix:
            data["matrix"] = {"objects": list(m.objects), "entries": [[round3(x) for x in row] for row in m.entries]}
        return to_json(data)
    text = f"{args.attr} (alpha={alpha:g}): {format_blocks(p)}\n"
    return (m.to_csv() + "\n" + text) if args.dump_matrix else text


def cmd_grade(args, system, config) -> str:
    r = run_level(system, config, args.level)
    if args.format == "json":
        d = level_to_dict(r)
        return to_json({k: d[k] for k in ("level", "alpha", "scale", "attributes", "class_order", "grades", "labels")})
    return f"Level {r.level} (alpha={r.alpha:g}, grade scale={r.scale})\n" + graded_table_text(r.graded)


def cmd_entropy(args, system, config) -> str:
    r = run_level(system, config, args.level)
    if args.format == "json":
        return to_json({"level": r.level, "alpha": r.alpha, **weights_to_dict(r.weight_report)})
    return f"Level {r.level} (alpha={r.alpha:g}, log base {config.log_base:g})\n" + weights_text(r.weight_report)


def cmd_approx(args, system, config) -> str:
    if args.level:
        lv = config.level(args.level)
        attrs, alpha = list(lv.attributes), config.alpha_for(lv.id)
    else:
        attrs, alpha = _split(args.attrs), config.alpha
        if not attrs:
            raise UnknownAttribute("empty attribute subset")
    parts = [alpha_partition(build_proximity(system.column(a), system.attribute(a)), alpha) for a in attrs]
    p = joint_partition(parts)
    target = _split(args.target)
    pair = approximate(p, target)
    order = {o: i for i, o in enumerate(system.objects)}
    lower = sorted(pair.lower, key=order.__getitem__)
    upper = sorted(pair.upper, key=order.__getitem__)
    if args.format == "json":
        return to_json({
            "attributes": attrs, "alpha": alpha, "target": target, "partition": p.to_lists(),
            "lower": lower, "upper": upper, "discernible": pair.discernible,
        })
    return (
        f"attributes: {', '.join(attrs)} (alpha={alpha:g})\n"
        f"partition:  {format_blocks(p)}\n"
        f"lower:      {{{', '.join(lower)}}}\n"
        f"upper:      {{{', '.join(upper)}}}\n"
        f"discernible: {'yes' if pair.discernible else 'no'}\n"
    )


COMMANDS = {
    "evaluate": cmd_evaluate,
    "partition": cmd_partition,
    "grade": cmd_grade,
    "entropy": cmd_entropy,
    "approx": cmd_approx,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        system, config = _load(args)
        output = COMMANDS[args.command](args, system, config)
    except RoughEvalError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    if args.out:
        args.out.write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
