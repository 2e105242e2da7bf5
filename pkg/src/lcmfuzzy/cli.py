"""Command-line entry point: infer, evaluate, compare, simulate, bench."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import Sequence

import numpy as np

from . import report
from .control import (ControllerConfig, PlantParams, SimulationError, convergence_probe,
                      run_closed_loop)
from .methods import COMPARISON_METHODS, InferenceRequest, RequestError, infer, parse_methods
from .rpcf import (BUNDLED_SPEC_FILES, COMPARISON_SPEC_FILES, bundled_specs, check_comparison, check_reports,
                   compare_methods, hard_failures, load_specs, run_experiment)

FORMATS = ("table", "csv", "json")


class CliError(Exception):
    pass


def _write(out: Path | None, name: str, text: str) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text, encoding="utf-8")


def _methods(args, default=None):
    try:
        return [m.selector for m in parse_methods(args.method, default or COMPARISON_METHODS)]
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _specs(args, default_files):
    try:
        specs = load_specs(args.input) if args.input else bundled_specs(default_files)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot load specs: {exc}") from None
    if args.method:
        keep = tuple(_methods(args))
        specs = [dataclasses.replace(s, methods=keep) for s in specs]
    return specs


def cmd_infer(args) -> int:
    if not args.input:
        raise CliError("infer needs --input <request.json>")
    try:
        request = InferenceRequest.from_json(Path(args.input).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliError(str(exc)) from None
    except RequestError as exc:
        raise CliError(f"{args.input}: {exc}") from None
    selectors = _methods(args, [request.default_method().selector]) if args.method \
        else [request.default_method().selector]
    responses = []
    for sel in selectors:
        try:
            responses.append(request.run(sel))
        except RequestError as exc:
            raise CliError(f"{args.input}: {exc}") from None
    payload = responses[0] if len(responses) == 1 else responses
    text = json.dumps(payload, indent=2) + "\n"
    _write(args.out, "result.json", text)
    if args.format == "json":
        sys.stdout.write(text)
    else:
        for r in responses:
            prefix = f"{r['method']}: " if len(responses) > 1 else ""
            print(prefix + report.fmt_vector(r["result"]))
    return 0


def _print(fmt: str, table: str, csv_text: str, json_text: str) -> None:
    sys.stdout.write({"table": table, "csv": csv_text, "json": json_text}[fmt])


def cmd_evaluate(args) -> int:
    specs = _specs(args, BUNDLED_SPEC_FILES)
    reports = [run_experiment(s) for s in specs]
    table = report.experiments_table(reports)
    csv_text = report.experiments_csv(reports)
    json_text = report.experiments_json(reports)
    _print(args.format, table, csv_text, json_text)
    _write(args.out, "evaluate.csv", csv_text)
    _write(args.out, "evaluate.txt", table)
    if args.out is not None and reports:
        from .plotting import plot_many
        plot_many(reports, args.out)
    if not args.check:
        return 0
    checks = check_reports(reports)
    text = report.checks_table(checks)
    _write(args.out, "checks.txt", text)
    sys.stderr.write(text)
    failed = hard_failures(checks)
    for c in failed:
        sys.stderr.write(f"fixture mismatch: {c.label}: expected {c.expected}, "
                         f"got {c.actual}, tol {c.tol}\n")
    return 1 if failed else 0


def cmd_compare(args) -> int:
    specs = _specs(args, COMPARISON_SPEC_FILES)
    comp = compare_methods(specs)
    table = report.comparison_table(comp)
    csv_text = report.comparison_csv(comp)
    _print(args.format, table, csv_text, report.comparison_json(comp))
    _write(args.out, "comparison.csv", csv_text)
    _write(args.out, "summary.csv", report.summary_csv(comp))
    _write(args.out, "comparison.txt", table)
    if args.out is not None and comp.rows:
        from .plotting import plot_comparison
        plot_comparison(comp, args.out / "comparison.svg")
    if not args.check:
        return 0
    checks = check_comparison(comp)
    text = report.checks_table(checks)
    _write(args.out, "checks.txt", text)
    sys.stderr.write(text)
    failed = hard_failures(checks)
    for c in failed:
        sys.stderr.write(f"fixture mismatch: {c.label}: expected {c.expected}, "
                         f"got {c.actual:.4f}, tol {c.tol}\n")
    return 1 if failed else 0


def cmd_simulate(args) -> int:
    plant = PlantParams()
    config = ControllerConfig()
    if args.input:
        try:
            data = json.loads(Path(args.input).read_text(encoding="utf-8"))
            plant = PlantParams(**data.get("plant", {}))
            config = ControllerConfig.from_dict(data.get("controller", {}))
        except (OSError, ValueError, TypeError, KeyError) as exc:
            raise CliError(f"{args.input}: {exc}") from None
    changes = {}
    if args.method:
        methods = _methods(args)
        if len(methods) != 1:
            raise CliError("simulate takes exactly one backend")
        changes["backend"] = methods[0]
    if args.rho is not None:
        changes["rho"] = args.rho
    try:
        config = config.replace(**changes) if changes else config
        trace = run_closed_loop(plant, config, args.steps)
    except (ValueError, SimulationError) as exc:
        raise CliError(str(exc)) from None
    probes = convergence_probe(config=config)
    by_backend = {p.backend: p for p in probes}
    mine = by_backend.get(config.backend) or convergence_probe([config.backend], config)[0]
    tail = max(1, len(trace) // 10)
    summary = {
        "backend": config.backend,
        "rho": config.rho,
        "steps": len(trace),
        "final_y": round(float(trace.y[-1]), 6),
        "final_abs_error": round(float(abs(trace.e[-1])), 6),
        "max_abs_error_tail": round(float(np.max(np.abs(trace.e[-tail:]))), 6),
        "distinct_increments": int(np.unique(trace.du).size),
        "stalled_steps": int(trace.stalled.sum()),
        "classification": mine.classification,
    }
    lines = [f"{k}: {v}" for k, v in summary.items()]
    table = "\n".join(lines) + "\n\n" + report.probe_table(probes)
    _print(args.format, table, trace.to_csv(), json.dumps(summary, indent=2) + "\n")
    _write(args.out, "trace.csv", trace.to_csv())
    _write(args.out, "probe.csv", report.probe_csv(probes))
    if args.out is not None:
        from .plotting import plot_trace
        plot_trace(trace, args.out / "trace.svg")
    return 0


def cmd_bench(args) -> int:
    if args.repeat < 1:
        raise CliError("--repeat must be at least 1")
    methods = _methods(args)
    specs = bundled_specs(COMPARISON_SPEC_FILES)
    jobs = []
    for s in specs:
        for cs in s.cases:
            jobs.append((s.direction, s.antecedent, s.consequent, s.premise(cs.case),
                         cs.case, s.stage_tilt()))
    rows = []
    for m in methods:
        t0 = time.perf_counter()
        for _ in range(args.repeat):
            for direction, A, B, P, case, tilt in jobs:
                infer(m, direction, A, B, P, case=case, tilt=tilt)
        elapsed = time.perf_counter() - t0
        runs = args.repeat * len(jobs)
        rows.append((m, runs, 1000.0 * elapsed / runs))
    table = report.bench_table(rows)
    csv_text = report.bench_csv(rows)
    js = json.dumps([{"method": m, "runs": n, "mean_ms": ms} for m, n, ms in rows], indent=2) + "\n"
    _print(args.format, table, csv_text, js)
    _write(args.out, "bench.csv", csv_text)
    return 0


COMMANDS = {
    "infer": (cmd_infer, "run one inference from a JSON request"),
    "evaluate": (cmd_evaluate, "run experiment specs and score reductive properties"),
    "compare": (cmd_compare, "compare methods across both classes and directions"),
    "simulate": (cmd_simulate, "closed-loop control run plus convergence probe"),
    "bench": (cmd_bench, "mean wall-clock time per inference, per method"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcmfuzzy",
        description="Distance-measure fuzzy reasoning on vectors of unequal length.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--input", help="request, spec or controller JSON file")
        p.add_argument("--out", type=Path, help="directory for CSV, JSON and SVG output")
        p.add_argument("--method", help="comma-separated selectors, e.g. lcm:p3,cri:godel")
        p.add_argument("--format", choices=FORMATS, default="table", help="stdout format")
        p.add_argument("--check", action="store_true",
                       help="compare against bundled fixtures; exit 1 on a mismatch")
        p.add_argument("--steps", type=int, default=300, help="simulation steps")
        p.add_argument("--rho", type=float, default=None, help="controller gain")
        p.add_argument("--repeat", type=int, default=5, help="benchmark repetitions")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command][0](args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
