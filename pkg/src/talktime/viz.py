"""SVG and terminal renderings of regime sequences.

Windows are drawn side by side without overlap even though they overlap in
time. Blue and red cells fade from ``min_opacity`` at the dominance
threshold to ``max_opacity`` at a 100% share.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional, Sequence
from xml.sax.saxutils import escape, quoteattr

from .dynamics import DynamicsReport
from .model import Composition, Regime


@dataclass(frozen=True)
class StripStyle:
    cell_width: float = 12.0
    cell_height: float = 24.0
    blue_hue: str = "#1f4fb4"
    red_hue: str = "#c8102e"
    gray_color: str = "#a6a6a6"
    intensity_range: tuple[float, float] = (0.30, 1.00)
    row_gap: float = 4.0
    label_width: float = 0.0
    pie_radius: float = 60.0

    def __post_init__(self):
        lo, hi = self.intensity_range
        if not (0 < lo <= hi <= 1):
            raise ValueError("intensity_range must satisfy 0 < min <= max <= 1")

    def fill(self, label: Regime) -> str:
        return {Regime.BLUE: self.blue_hue, Regime.RED: self.red_hue, Regime.GRAY: self.gray_color}[label]


def _num(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _doc(width: float, height: float, body: Sequence[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">\n'
    )
    return head + "".join(line + "\n" for line in body) + "</svg>\n"


def cell_opacity(fraction: float, threshold: float, style: StripStyle) -> float:
    """Linear map of a dominance share from [threshold, 1] onto the opacity range."""
    lo, hi = style.intensity_range
    if threshold >= 1:
        return hi
    t = (fraction - threshold) / (1 - threshold)
    t = min(1.0, max(0.0, t))
    return lo + t * (hi - lo)


def _strip_cells(report: DynamicsReport, style: StripStyle, x0: float, y0: float) -> list[str]:
    cfg = report.regimes.config_used
    cells = []
    for i, w in enumerate(report.regimes.windows):
        if w.label == Regime.GRAY:
            opacity = 1.0
        else:
            opacity = cell_opacity(w.dominance_fraction, cfg.threshold(w.dominant_party), style)
        cells.append(
            f'<rect x="{_num(x0 + i * style.cell_width)}" y="{_num(y0)}" '
            f'width="{_num(style.cell_width)}" height="{_num(style.cell_height)}" '
            f'fill="{style.fill(w.label)}" fill-opacity="{opacity:.4f}" '
            f'data-label="{w.label.value}" data-start="{_num(w.start)}"/>'
        )
    return cells


def render_strip(report: DynamicsReport, style: StripStyle = StripStyle()) -> str:
    n = len(report.regimes.windows)
    if n == 0:
        raise ValueError("report has no windows")
    body = [f"<title>{escape(report.id)}</title>"] + _strip_cells(report, style, 0.0, 0.0)
    return _doc(n * style.cell_width, style.cell_height, body)


def percent_label(fraction: float) -> str:
    """Whole-number percentage, rounding halves up."""
    pct = (Decimal(repr(fraction)) * 100).quantize(Decimal(1), rounding=ROUND_HALF_UP)
    return f"{pct}%"


def pie_wedges(c: Composition) -> list[tuple[Regime, float, float]]:
    """``(label, start_deg, sweep_deg)`` for each non-empty wedge, clockwise from 12 o'clock."""
    out = []
    angle = 0.0
    for label, frac in ((Regime.BLUE, c.blue_frac), (Regime.RED, c.red_frac), (Regime.GRAY, c.gray_frac)):
        if frac <= 0:
            continue
        sweep = 360.0 * frac
        out.append((label, angle, sweep))
        angle += sweep
    return out


def _polar(cx: float, cy: float, r: float, deg: float) -> tuple[float, float]:
    rad = math.radians(deg - 90.0)
    return cx + r * math.cos(rad), cy + r * math.sin(rad)


def render_pie(c: Composition, style: StripStyle = StripStyle()) -> str:
    r = style.pie_radius
    pad = 20.0
    cx = cy = r + pad
    body = []
    labels = []
    fracs = {Regime.BLUE: c.blue_frac, Regime.RED: c.red_frac, Regime.GRAY: c.gray_frac}
    for label, start, sweep in pie_wedges(c):
        attrs = f'fill="{style.fill(label)}" data-label="{label.value}" data-angle="{sweep:.6f}"'
        if sweep >= 360.0 - 1e-9:
            body.append(f'<circle class="wedge" cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(r)}" {attrs}/>')
        else:
            x1, y1 = _polar(cx, cy, r, start)
            x2, y2 = _polar(cx, cy, r, start + sweep)
            large = 1 if sweep > 180 else 0
            body.append(
                f'<path class="wedge" d="M {_num(cx)} {_num(cy)} L {_num(x1)} {_num(y1)} '
                f'A {_num(r)} {_num(r)} 0 {large} 1 {_num(x2)} {_num(y2)} Z" {attrs}/>'
            )
        tx, ty = _polar(cx, cy, r * 0.6, start + sweep / 2)
        labels.append(
            f'<text x="{_num(tx)}" y="{_num(ty)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{percent_label(fracs[label])}</text>'
        )
    return _doc(2 * cx, 2 * cy, body + labels)


def sort_reports(reports: Sequence[DynamicsReport], sort: str = "imbalance_desc") -> list[DynamicsReport]:
    if sort == "imbalance_desc":
        return sorted(reports, key=lambda r: (-r.imbalance.value, r.id))
    if sort == "id":
        return sorted(reports, key=lambda r: r.id)
    raise ValueError(f"unknown sort {sort!r}")


def render_corpus_grid(
    reports: Sequence[DynamicsReport],
    sort: str = "imbalance_desc",
    style: StripStyle = StripStyle(label_width=160.0),
) -> str:
    """One strip per conversation, stacked top to bottom."""
    if not reports:
        raise ValueError("no reports to render")
    rows = sort_reports(reports, sort)
    pitch = style.cell_height + style.row_gap
    n_max = max(len(r.regimes.windows) for r in rows)
    body = []
    for i, rep in enumerate(rows):
        y = i * pitch
        body.append(f"<g class=\"row\" data-id={quoteattr(rep.id)}>")
        if style.label_width > 0:
            body.append(
                f'<text x="4" y="{_num(y + style.cell_height * 0.7)}" font-family="sans-serif" '
                f'font-size="10">{escape(rep.id)} ({rep.imbalance.value:.2f})</text>'
            )
        body.extend(_strip_cells(rep, style, style.label_width, y))
        body.append("</g>")
    return _doc(style.label_width + n_max * style.cell_width, len(rows) * pitch, body)


_ANSI = {Regime.BLUE: "\x1b[34m", Regime.RED: "\x1b[31m", Regime.GRAY: "\x1b[90m"}
_RESET = "\x1b[0m"


def color_enabled() -> bool:
    return not os.environ.get("NO_COLOR")


def render_terminal(report: DynamicsReport, color: Optional[bool] = None) -> str:
    """One block per window; plain B/R/G letters when color is off."""
    if color is None:
        color = color_enabled()
    labels = [w.label for w in report.regimes.windows]
    if not color:
        return "".join(lab.letter for lab in labels)
    return "".join(f"{_ANSI[lab]}█" for lab in labels) + (_RESET if labels else "")
