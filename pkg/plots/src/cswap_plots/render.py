"""Deterministic rendering of figure specs from schema-v1 CSV files.

Output bytes depend only on (spec, CSV contents): fixed style, fixed
SVG hash salt, and no timestamp or software metadata in either format.
"""

from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .specs import FIGURE_SPECS, FigureSpec, Panel  # noqa: E402

matplotlib.rcParams.update({
    "svg.hashsalt": "cswap-plots",
    "figure.dpi": 110,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
})

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#17becf", "#7f7f7f")
_STYLES = {"solid": "-", "dashed": "--", "dotted": ":"}

SCHEMA_COLUMNS = ("experiment_id", "schema_version", "seed")


class RenderError(ValueError):
    pass


def load_csv(path) -> tuple[list[str], list[dict]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        rows = list(reader)
    for col in SCHEMA_COLUMNS:
        if col not in header:
            raise RenderError(f"{path}: missing schema column {col!r}")
    if not rows:
        raise RenderError(f"{path}: no data rows")
    return header, rows


def _num(row: dict, col: str) -> float:
    raw = row.get(col, "")
    if raw == "" or raw is None:
        return math.nan
    try:
        return float(raw)
    except ValueError:
        return math.nan


def _panel_rows(panel: Panel, rows: list[dict]) -> list[dict]:
    if panel.filter_eq:
        col, val = panel.filter_eq
        rows = [r for r in rows if r.get(col) == val]
    return rows


def _series_values(panel: Panel, rows: list[dict]) -> list[str]:
    if panel.series is None:
        return [""]
    seen: list[str] = []
    for r in rows:
        v = r.get(panel.series, "")
        if v not in seen:
            seen.append(v)
    return seen


def _draw_line_or_scatter(ax, panel: Panel, rows: list[dict]):
    scatter = panel.kind == "scatter"
    for s_idx, series_val in enumerate(_series_values(panel, rows)):
        subset = rows if panel.series is None else [
            r for r in rows if r.get(panel.series) == series_val]
        color = _COLORS[s_idx % len(_COLORS)]
        for curve in panel.curves:
            pts = [(_num(r, panel.x), _num(r, curve.column)) for r in subset]
            pts = [(x, y) for x, y in pts
                   if not (math.isnan(x) or math.isnan(y))]
            if not pts:
                continue
            xs, ys = zip(*sorted(pts))
            label_bits = []
            if panel.series is not None:
                label_bits.append(f"{panel.series}={series_val}")
            if curve.label:
                label_bits.append(curve.label)
            label = ", ".join(label_bits) or curve.column
            if scatter:
                ax.plot(xs, ys, linestyle="none",
                        marker=curve.marker or ".", markersize=4,
                        color=color, label=label, alpha=0.8)
            else:
                ax.plot(xs, ys, _STYLES.get(curve.style, "-"),
                        marker=curve.marker, markersize=3,
                        color=color, label=label)
    if panel.hline_column:
        vals = [_num(r, panel.hline_column) for r in rows]
        vals = [v for v in vals if not math.isnan(v)]
        if vals:
            ax.axhline(vals[0], color="#444444", linewidth=0.8,
                       linestyle=":", label="limit")
    handles, labels = ax.get_legend_handles_labels()
    if labels:
        ax.legend(fontsize=6, ncol=2 if len(labels) > 6 else 1)


def _draw_heatmap(ax, panel: Panel, rows: list[dict]):
    xs = sorted({_num(r, panel.x) for r in rows})
    ys = sorted({_num(r, panel.heat_y) for r in rows})
    grid = np.full((len(ys), len(xs)), np.nan)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    for r in rows:
        grid[yi[_num(r, panel.heat_y)], xi[_num(r, panel.x)]] = \
            _num(r, panel.heat_value)
    mesh = ax.imshow(grid, origin="lower", aspect="auto",
                     extent=(min(xs), max(xs), min(ys), max(ys)),
                     cmap="viridis")
    plt.colorbar(mesh, ax=ax, label=panel.heat_value)


def render(spec: FigureSpec, csv_path, out_dir,
           formats: tuple[str, ...] = ("svg", "png")) -> list[Path]:
    """Render one spec from one CSV; returns the files written."""
    if spec.tabular_only:
        raise RenderError(f"{spec.experiment_id} is tabular-only")
    header, rows = load_csv(csv_path)
    missing = spec.required_columns - set(header)
    if missing:
        raise RenderError(
            f"{csv_path}: columns {sorted(missing)} required by "
            f"{spec.experiment_id} are absent")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    n_panels = len(spec.panels)
    fig, axes = plt.subplots(1, n_panels,
                             figsize=(4.2 * n_panels, 3.2), squeeze=False)
    try:
        for ax, panel in zip(axes[0], spec.panels):
            panel_rows = _panel_rows(panel, rows)
            if not panel_rows:
                raise RenderError(
                    f"{spec.experiment_id}: no rows for panel filter "
                    f"{panel.filter_eq}")
            if panel.kind == "heatmap":
                _draw_heatmap(ax, panel, panel_rows)
            else:
                _draw_line_or_scatter(ax, panel, panel_rows)
            ax.set_xlabel(panel.x_label or panel.x)
            ax.set_ylabel(panel.y_label)
            ax.set_title(panel.title, fontsize=8)
        fig.tight_layout()
        written = []
        for fmt in formats:
            target = out_dir / f"{spec.output_stem}.{fmt}"
            tmp = out_dir / f".{spec.output_stem}.{fmt}.tmp"
            metadata = {"Date": None} if fmt == "svg" else \
                {"Software": None}
            fig.savefig(tmp, format=fmt, metadata=metadata)
            os.replace(tmp, target)
            written.append(target)
        return written
    finally:
        plt.close(fig)


def render_all(csv_dir, out_dir,
               formats: tuple[str, ...] = ("svg", "png")) -> dict:
    """Render every known spec whose CSV is present; collect per-spec
    failures instead of aborting the batch."""
    csv_dir = Path(csv_dir)
    out_dir = Path(out_dir)
    manifest: dict = {"written": [], "skipped": [], "tabular_only": []}
    for exp_id, spec in sorted(FIGURE_SPECS.items()):
        if spec.tabular_only:
            manifest["tabular_only"].append(exp_id)
            continue
        csv_path = csv_dir / f"{exp_id}.csv"
        if not csv_path.exists():
            manifest["skipped"].append(
                {"experiment_id": exp_id, "reason": "csv missing"})
            continue
        try:
            files = render(spec, csv_path, out_dir, formats)
        except RenderError as exc:
            manifest["skipped"].append(
                {"experiment_id": exp_id, "reason": str(exc)})
            continue
        manifest["written"].extend(str(f) for f in files)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest_path = out_dir / "manifest.json"
    tmp = out_dir / ".manifest.json.tmp"
    tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                   encoding="utf-8")
    os.replace(tmp, manifest_path)
    return manifest
