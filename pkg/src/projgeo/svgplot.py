"""Dependency-free SVG plots of suite reports.

One panel per check id, ratio (lhs/rhs) against the dimension n; every
(body, n) cell is a point colored by status, with a line through the
per-dimension means.  Output bytes are deterministic for a given set of
reports (fixed float formatting, stable ordering).
"""

from __future__ import annotations

import math
from pathlib import Path

from .checks import CHECK_IDS

PANEL_W = 230
PANEL_H = 170
MARGIN_L = 46
MARGIN_R = 12
MARGIN_T = 26
MARGIN_B = 30
GAP = 16
COLS = 4

STATUS_COLORS = {
    "pass": "#2a9d5c",
    "inconclusive": "#e6a100",
    "fail": "#d62d2d",
    "error": "#9b4dca",
}
MEAN_COLOR = "#4477aa"
AXIS_COLOR = "#555555"
FONT = "font-family=\"Helvetica,Arial,sans-serif\""


def _f(x: float) -> str:
    return f"{x:.2f}"


def _collect(reports) -> dict:
    """{check id: [(n, ratio, status, body), ...]} over all reports."""
    cells: dict = {}
    for report in reports:
        for res in report.get("results", []):
            status = res["status"]
            if status in ("skipped", "error"):
                continue
            ratio = res.get("ratio")
            if ratio is None or not math.isfinite(ratio):
                continue
            cells.setdefault(res["id"], []).append(
                (int(res["n"]), float(ratio), status, res["body"]))
    return cells


def _panel(check_id: str, points: list, x0: float, y0: float) -> list:
    dims = sorted({n for n, _, _, _ in points})
    ratios = [r for _, r, _, _ in points]
    lo, hi = min(ratios), max(ratios)
    if hi - lo < 1e-12:
        pad = max(0.1 * abs(hi), 0.05)
        lo, hi = lo - pad, hi + pad
    else:
        pad = 0.08 * (hi - lo)
        lo, hi = lo - pad, hi + pad

    plot_w = PANEL_W - MARGIN_L - MARGIN_R
    plot_h = PANEL_H - MARGIN_T - MARGIN_B
    left, top = x0 + MARGIN_L, y0 + MARGIN_T

    def sx(n: int) -> float:
        if len(dims) == 1:
            return left + plot_w / 2.0
        frac = (dims.index(n)) / (len(dims) - 1)
        return left + frac * plot_w

    def sy(r: float) -> float:
        return top + (hi - r) / (hi - lo) * plot_h

    parts = [
        f'<text x="{_f(x0 + PANEL_W / 2)}" y="{_f(y0 + 14)}" {FONT} '
        f'font-size="11" font-weight="bold" text-anchor="middle">'
        f'{check_id}</text>',
        f'<rect x="{_f(left)}" y="{_f(top)}" width="{_f(plot_w)}" '
        f'height="{_f(plot_h)}" fill="none" stroke="{AXIS_COLOR}" '
        f'stroke-width="0.8"/>',
    ]
    for tick in (lo, (lo + hi) / 2.0, hi):
        y = sy(tick)
        parts.append(f'<line x1="{_f(left - 3)}" y1="{_f(y)}" '
                     f'x2="{_f(left)}" y2="{_f(y)}" '
                     f'stroke="{AXIS_COLOR}" stroke-width="0.8"/>')
        parts.append(f'<text x="{_f(left - 5)}" y="{_f(y + 3)}" {FONT} '
                     f'font-size="8" text-anchor="end">{_f(tick)}</text>')
    for n in dims:
        x = sx(n)
        parts.append(f'<line x1="{_f(x)}" y1="{_f(top + plot_h)}" '
                     f'x2="{_f(x)}" y2="{_f(top + plot_h + 3)}" '
                     f'stroke="{AXIS_COLOR}" stroke-width="0.8"/>')
        parts.append(f'<text x="{_f(x)}" y="{_f(top + plot_h + 13)}" {FONT} '
                     f'font-size="9" text-anchor="middle">n={n}</text>')

    means = []
    for n in dims:
        vals = [r for m, r, _, _ in points if m == n]
        means.append((sx(n), sy(sum(vals) / len(vals))))
    if len(means) > 1:
        path = " ".join(f"{_f(px)},{_f(py)}" for px, py in means)
        parts.append(f'<polyline points="{path}" fill="none" '
                     f'stroke="{MEAN_COLOR}" stroke-width="1.4"/>')

    for n in dims:
        group = sorted((body, r, status) for m, r, status, body in points
                       if m == n)
        spread = min(4.0, plot_w / max(6 * len(group), 1))
        for idx, (_, ratio, status) in enumerate(group):
            dx = (idx - (len(group) - 1) / 2.0) * spread
            parts.append(
                f'<circle cx="{_f(sx(n) + dx)}" cy="{_f(sy(ratio))}" r="2.4" '
                f'fill="{STATUS_COLORS[status]}" fill-opacity="0.85"/>')
    return parts


def render(reports: list[dict]) -> str:
    """The SVG document (as a string) for one or more suite reports."""
    cells = _collect(reports)
    if not cells:
        raise ValueError("reports contain no plottable cells")
    ordered = [cid for cid in CHECK_IDS if cid in cells]
    ordered += sorted(set(cells) - set(ordered))

    rows = (len(ordered) + COLS - 1) // COLS
    width = COLS * PANEL_W + (COLS + 1) * GAP
    height = rows * PANEL_H + (rows + 1) * GAP + 24

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    legend_x = GAP
    for status, color in STATUS_COLORS.items():
        parts.append(f'<circle cx="{legend_x + 5}" cy="14" r="4" '
                     f'fill="{color}"/>')
        parts.append(f'<text x="{legend_x + 13}" y="18" {FONT} '
                     f'font-size="11">{status}</text>')
        legend_x += 22 + 7 * len(status)
    parts.append(f'<text x="{width - GAP}" y="18" {FONT} font-size="11" '
                 f'text-anchor="end">ratio lhs/rhs vs dimension</text>')

    for idx, cid in enumerate(ordered):
        col, row = idx % COLS, idx // COLS
        x0 = GAP + col * (PANEL_W + GAP)
        y0 = 24 + GAP + row * (PANEL_H + GAP)
        parts.extend(_panel(cid, cells[cid], x0, y0))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def plot_reports(reports: list[dict], out) -> None:
    Path(out).write_text(render(reports))
