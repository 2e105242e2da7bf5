"""Figures written next to the CSV reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .control import ControlTrace  # noqa: E402
from .rpcf import Comparison, RpcfReport  # noqa: E402

_SVG_META = {"Date": None}


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context({"svg.hashsalt": "lcmfuzzy"}):
        fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)
    return path


def plot_trace(trace: ControlTrace, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.plot(trace.k, trace.y, label="y(k)", color="tab:blue")
    ax.axhline(trace.setpoint, color="tab:red", linestyle="--", linewidth=1, label="setpoint")
    ax.set_xlabel("step k")
    ax.set_ylabel("plant output")
    ax.set_title(f"{trace.backend}, rho = {trace.rho:g}")
    ax.legend(loc="lower right")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return _save(fig, path)


def plot_experiment(report: RpcfReport, path: str | Path) -> Path:
    cases = [c.case.label for c in report.spec.cases]
    methods = [m for m in report.methods if report.for_method(m)]
    fig, ax = plt.subplots(figsize=(max(6, 0.5 * len(methods) * len(cases)), 4))
    width = 0.8 / max(1, len(methods))
    x = np.arange(len(cases))
    for k, m in enumerate(methods):
        vals = [report.case_rpcf(m, c) for c in cases]
        ax.bar(x + k * width, vals, width, label=m)
    ax.set_xticks(x + 0.4 - width / 2, cases)
    ax.set_ylabel("RPCF (%)")
    ax.set_ylim(0, 105)
    ax.set_title(report.spec.name)
    ax.legend(fontsize=6, ncol=4, loc="lower left")
    fig.tight_layout()
    return _save(fig, path)


def plot_comparison(comp: Comparison, path: str | Path) -> Path:
    classes = sorted({r.klass for r in comp.rows})
    fig, axes = plt.subplots(len(classes), 1, figsize=(9, 3.2 * len(classes)), squeeze=False)
    for ax, klass in zip(axes[:, 0], classes):
        rows = [r for r in comp.rows if r.klass == klass]
        x = np.arange(len(rows))
        ax.bar(x - 0.2, [r.fmp or 0 for r in rows], 0.4, label="FMP")
        ax.bar(x + 0.2, [r.fmt or 0 for r in rows], 0.4, label="FMT")
        ax.set_xticks(x, [r.method for r in rows], rotation=60, ha="right", fontsize=7)
        ax.set_ylim(0, 105)
        ax.set_ylabel("RPCF (%)")
        ax.set_title(f"class {klass}")
        ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)


def plot_many(reports: Sequence[RpcfReport], out_dir: str | Path) -> list[Path]:
    return [plot_experiment(r, Path(out_dir) / f"{r.spec.name}.svg") for r in reports]
