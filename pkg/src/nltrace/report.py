"""Experiment reports: fixed-schema rows, CSV/JSON emission, figures.

The column set is stable so downstream tooling can rely on it:
``n,k,weight,value,upper_bound,lower_bound,finite_n_bound,verdict``.
Floats are rendered with 17 significant digits, which round-trips IEEE
doubles exactly, and the writers are deterministic byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import BadParam

COLUMNS = ("n", "k", "weight", "value", "upper_bound", "lower_bound",
           "finite_n_bound", "verdict")


@dataclass(frozen=True)
class ReportRow:
    n: int | None = None
    k: int | None = None
    weight: str = ""
    value: float | None = None
    upper_bound: float | None = None
    lower_bound: float | None = None
    finite_n_bound: float | None = None
    verdict: bool | None = None


@dataclass(frozen=True)
class ExperimentReport:
    title: str
    rows: tuple[ReportRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.verdict for r in self.rows if r.verdict is not None)


def _format_number(x: float) -> str:
    if not math.isfinite(x):
        raise BadParam(f"cannot serialize non-finite value {x!r}")
    return format(float(x), ".17g")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "pass" if value else "fail"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_number(value)
    return str(value)


def report_csv(report: ExperimentReport) -> str:
    lines = [",".join(COLUMNS)]
    for row in report.rows:
        lines.append(",".join(_csv_cell(getattr(row, name)) for name in COLUMNS))
    return "\n".join(lines) + "\n"


def _json_cell(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_number(value)
    escaped = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def report_json(report: ExperimentReport) -> str:
    """Hand-rolled writer so numbers keep the exact 17-digit rendering."""
    out = ['{\n  "title": ', _json_cell(report.title), ',\n  "rows": [\n']
    row_texts = []
    for row in report.rows:
        cells = ", ".join(f'"{name}": {_json_cell(getattr(row, name))}'
                          for name in COLUMNS)
        row_texts.append("    {" + cells + "}")
    out.append(",\n".join(row_texts))
    out.append("\n  ]\n}\n")
    return "".join(out)


def emit_report(report: ExperimentReport, fmt: str, path: str | Path | None):
    """Write the report as csv or json to ``path`` (or return the text)."""
    if fmt == "csv":
        text = report_csv(report)
    elif fmt == "json":
        text = report_json(report)
    else:
        raise BadParam(f"format must be csv or json, got {fmt!r}")
    if path is None:
        return text
    Path(path).write_text(text, encoding="utf-8")
    return text


def render_figure(report: ExperimentReport, path: str | Path) -> None:
    """Plot value against n, one line per (k, weight) series, with the
    bound envelopes dashed; saved alongside the delimited output."""
    from matplotlib.figure import Figure

    series: dict[tuple, list[ReportRow]] = {}
    for row in report.rows:
        if row.n is None or row.value is None:
            continue
        series.setdefault((row.k, row.weight), []).append(row)

    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.add_subplot()
    for (k, weight), rows in sorted(series.items(), key=lambda kv: str(kv[0])):
        rows = sorted(rows, key=lambda r: r.n)
        ns = [r.n for r in rows]
        label = ", ".join(p for p in (f"k={k}" if k is not None else "", weight) if p)
        line, = ax.plot(ns, [r.value for r in rows], marker="o", label=label or None)
        color = line.get_color()
        for attr, style in (("upper_bound", "--"), ("lower_bound", ":")):
            ys = [getattr(r, attr) for r in rows]
            if any(y is not None for y in ys):
                ax.plot(ns, ys, style, color=color, linewidth=1.0, alpha=0.7)
    if series and all(n is not None and n > 0
                      for rows in series.values() for n in (r.n for r in rows)):
        ns_all = sorted({r.n for rows in series.values() for r in rows})
        if len(ns_all) > 2 and ns_all[-1] >= 8 * ns_all[0]:
            ax.set_xscale("log", base=2)
    ax.set_xlabel("n")
    ax.set_ylabel("value")
    ax.set_title(report.title)
    if series:
        ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
