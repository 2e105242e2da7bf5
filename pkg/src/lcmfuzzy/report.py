"""Text, CSV and JSON renderings of results.  Output is deterministic:
fixed decimals and a stable row order, no timings in CSV."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

from .control import ProbeResult
from .rpcf import Comparison, FixtureCheck, RpcfReport


def fmt_vector(values: Iterable[float]) -> str:
    return "[" + ", ".join(f"{v:.4f}" for v in values) + "]"


def fmt_pct(value: float | None) -> str:
    return "" if value is None else f"{value:.2f}"


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(header: Sequence[str], rows: Sequence[Sequence[str]], right: set[int] = frozenset()) -> str:
    widths = [len(h) for h in header]
    for r in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]

    def line(cells):
        out = [c.rjust(w) if i in right else c.ljust(w)
               for i, (c, w) in enumerate(zip(cells, widths))]
        return "  ".join(out).rstrip()

    sep = "  ".join("-" * w for w in widths)
    return "\n".join([line(header), sep] + [line(r) for r in rows]) + "\n"


EXPERIMENT_COLUMNS = ("spec", "direction", "class", "method", "case", "rpcf",
                      "degenerate", "result", "target")


def _vec_cell(values) -> str:
    return " ".join(f"{v:.4f}" for v in values)


def experiments_csv(reports: Sequence[RpcfReport]) -> str:
    rows = []
    for rep in reports:
        s = rep.spec
        for r in rep.records:
            rows.append([s.name, s.direction, "" if s.klass is None else s.klass, r.method,
                         r.case.label, fmt_pct(r.rpcf), int(r.degenerate),
                         _vec_cell(r.result.grades), _vec_cell(r.target.grades)])
    return _csv(EXPERIMENT_COLUMNS, rows)


def experiments_table(reports: Sequence[RpcfReport]) -> str:
    parts = []
    for rep in reports:
        s = rep.spec
        klass = "" if s.klass is None else f", class {s.klass}"
        parts.append(f"{s.name} ({s.direction.upper()}{klass})")
        if s.description:
            parts.append(s.description)
        rows = [[r.method, r.case.label, fmt_vector(r.result.grades), fmt_pct(r.rpcf)]
                for r in rep.records]
        parts.append(_table(("method", "case", "result", "rpcf"), rows, {3}))
        avg = [[m, fmt_pct(v)] for m, v in rep.averages().items()]
        parts.append(_table(("method", "average rpcf"), avg, {1}))
    return "\n".join(parts)


def experiments_json(reports: Sequence[RpcfReport]) -> str:
    out = []
    for rep in reports:
        out.append({
            "spec": rep.spec.name,
            "direction": rep.spec.direction,
            "class": rep.spec.klass,
            "records": [{
                "method": r.method, "case": r.case.label,
                "premise": [round(x, 6) for x in r.premise.grades],
                "result": [round(x, 6) for x in r.result.grades],
                "target": [round(x, 6) for x in r.target.grades],
                "rpcf": round(r.rpcf, 4), "degenerate": r.degenerate,
            } for r in rep.records],
            "averages": {m: round(v, 4) for m, v in rep.averages().items()},
        })
    return json.dumps(out, indent=2) + "\n"


COMPARISON_COLUMNS = ("class", "method", "rpcf_fmp", "rpcf_fmt", "rpcf_fr", "family_average")


def _comparison_rows(comp: Comparison) -> list[list]:
    rows = []
    seen: set[tuple[int, str]] = set()
    for r in comp.rows:
        fam = r.method.split(":")[0]
        first = (r.klass, fam) not in seen
        seen.add((r.klass, fam))
        fam_avg = comp.family_average(fam, r.klass) if first else None
        rows.append([str(r.klass), r.method, fmt_pct(r.fmp), fmt_pct(r.fmt),
                     fmt_pct(r.fr), fmt_pct(fam_avg)])
    return rows


def comparison_csv(comp: Comparison) -> str:
    return _csv(COMPARISON_COLUMNS, _comparison_rows(comp))


def summary_csv(comp: Comparison) -> str:
    rows = [[s.family, fmt_pct(s.fmp), fmt_pct(s.fmt), fmt_pct(s.average)] for s in comp.summary]
    return _csv(("family", "fmp", "fmt", "average"), rows)


def comparison_table(comp: Comparison) -> str:
    parts = []
    rows = _comparison_rows(comp)
    for klass in sorted({r[0] for r in rows}):
        parts.append(f"class {klass}")
        mine = [r[1:] for r in rows if r[0] == klass]
        parts.append(_table(COMPARISON_COLUMNS[1:], mine, {1, 2, 3, 4}))
    summary = [[s.family, fmt_pct(s.fmp), fmt_pct(s.fmt), fmt_pct(s.average)] for s in comp.summary]
    parts.append("summary over both classes")
    parts.append(_table(("family", "fmp", "fmt", "average"), summary, {1, 2, 3}))
    return "\n".join(parts)


def comparison_json(comp: Comparison) -> str:
    data = {
        "rows": [{"class": r.klass, "method": r.method, "fmp": r.fmp, "fmt": r.fmt, "fr": r.fr}
                 for r in comp.rows],
        "summary": [{"family": s.family, "fmp": s.fmp, "fmt": s.fmt, "average": s.average}
                    for s in comp.summary],
    }
    return json.dumps(data, indent=2) + "\n"


def checks_table(checks: Sequence[FixtureCheck]) -> str:
    rows = []
    for c in checks:
        status = "ok" if c.ok else ("soft" if c.soft else "FAIL")
        if isinstance(c.expected, list):
            exp, act = fmt_vector(c.expected), fmt_vector(c.actual)
        else:
            exp, act = f"{c.expected:.2f}", f"{c.actual:.2f}"
        rows.append([status, c.label, exp, act, f"{c.deviation:.4f}", f"{c.tol:g}"])
    return _table(("status", "cell", "expected", "actual", "deviation", "tol"), rows, {4, 5})


def probe_csv(results: Sequence[ProbeResult]) -> str:
    rows = [[r.backend, r.distinct_outputs, r.classification] for r in results]
    return _csv(("backend", "distinct_outputs", "classification"), rows)


def probe_table(results: Sequence[ProbeResult]) -> str:
    rows = [[r.backend, str(r.distinct_outputs), r.classification] for r in results]
    return _table(("backend", "distinct outputs", "classification"), rows, {1})


def bench_table(rows: Sequence[tuple[str, int, float]]) -> str:
    body = [[m, str(n), f"{ms:.4f}"] for m, n, ms in rows]
    return _table(("method", "runs", "mean ms"), body, {1, 2})


def bench_csv(rows: Sequence[tuple[str, int, float]]) -> str:
    return _csv(("method", "runs", "mean_ms"), [[m, n, f"{ms:.4f}"] for m, n, ms in rows])
