"""Deterministic SVG line plots of year-frequency series.

Output is a plain-text SVG built from the inputs alone: no timestamps,
no randomness, no font metrics. Identical input renders byte-identical
output, which makes golden-file tests and diffable artifacts possible.

Series are distinguished by stroke pattern (solid, dashed, dotted,
dash-dot), not color, so plots survive monochrome printing. Points
flagged as having no data break the line; an isolated data point is
drawn as a small circle so it stays visible.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 400
MARGIN_LEFT, MARGIN_RIGHT = 58, 14
MARGIN_TOP, MARGIN_BOTTOM = 34, 42

_PLOT_LEFT = MARGIN_LEFT
_PLOT_RIGHT = WIDTH - MARGIN_RIGHT
_PLOT_TOP = MARGIN_TOP
_PLOT_BOTTOM = HEIGHT - MARGIN_BOTTOM

# stroke-dasharray per series index: solid, dashed, dotted, dash-dot
STROKE_PATTERNS = ("", "8 4", "2 3", "8 3 2 3")

_HEADROOM = 1.1


def _num(value):
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def _nice_step(span, divisions=5):
    """Smallest 1/2/5 x 10^k step giving at most `divisions` intervals."""
    raw = span / divisions
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for multiplier in (1, 2, 5, 10):
        step = multiplier * magnitude
        if step >= raw:
            return step
    return 10 * magnitude


def render_plot(series_list, title):
    """Render FrequencySeries as a standalone 640x400 SVG string.

    The y axis runs from zero to the highest data point plus 10%
    headroom (unit scale when there is no data at all); the x axis
    covers the union of the series' years. When every point of every
    series is flagged no-data, the axes render with a "no data" placard
    instead of lines.
    """
    if not series_list:
        raise ValueError("render_plot needs at least one series")

    years = sorted({year for series in series_list for year in series.points})
    values = [point.frequency
              for series in series_list
              for point in series.points.values()
              if point.has_data]
    top = max(values) * _HEADROOM if values and max(values) > 0 else 1.0

    def x_at(year):
        if len(years) < 2 or years[-1] == years[0]:
            return (_PLOT_LEFT + _PLOT_RIGHT) / 2
        frac = (year - years[0]) / (years[-1] - years[0])
        return _PLOT_LEFT + frac * (_PLOT_RIGHT - _PLOT_LEFT)

    def y_at(value):
        return _PLOT_BOTTOM - (value / top) * (_PLOT_BOTTOM - _PLOT_TOP)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:g}" y="20" font-family="sans-serif" font-size="14" '
        f'text-anchor="middle">{escape(title)}</text>',
    ]

    # horizontal gridlines and y tick labels
    step = _nice_step(top)
    tick = 0
    while tick * step <= top + 1e-12:
        value = tick * step
        y = y_at(value)
        parts.append(
            f'<line x1="{_PLOT_LEFT}" y1="{_num(y)}" x2="{_PLOT_RIGHT}" y2="{_num(y)}" '
            f'stroke="#cccccc" stroke-width="0.5"/>')
        parts.append(
            f'<text x="{_PLOT_LEFT - 6}" y="{_num(y + 3.5)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{value:g}</text>')
        tick += 1

    # x ticks: at most eight labeled years
    if years:
        year_step = max(1, math.ceil((years[-1] - years[0]) / 7)) if len(years) > 1 else 1
        year = years[0]
        while year <= years[-1]:
            x = x_at(year)
            parts.append(
                f'<line x1="{_num(x)}" y1="{_PLOT_BOTTOM}" x2="{_num(x)}" '
                f'y2="{_PLOT_BOTTOM + 5}" stroke="black" stroke-width="1"/>')
            parts.append(
                f'<text x="{_num(x)}" y="{_PLOT_BOTTOM + 19}" font-family="sans-serif" '
                f'font-size="11" text-anchor="middle">{year}</text>')
            year += year_step

    # axes
    parts.append(
        f'<line x1="{_PLOT_LEFT}" y1="{_PLOT_TOP}" x2="{_PLOT_LEFT}" '
        f'y2="{_PLOT_BOTTOM}" stroke="black" stroke-width="1"/>')
    parts.append(
        f'<line x1="{_PLOT_LEFT}" y1="{_PLOT_BOTTOM}" x2="{_PLOT_RIGHT}" '
        f'y2="{_PLOT_BOTTOM}" stroke="black" stroke-width="1"/>')

    if values:
        for index, series in enumerate(series_list):
            pattern = STROKE_PATTERNS[index % len(STROKE_PATTERNS)]
            dash = f' stroke-dasharray="{pattern}"' if pattern else ""
            for run in _data_runs(series):
                if len(run) == 1:
                    year, value = run[0]
                    parts.append(
                        f'<circle cx="{_num(x_at(year))}" cy="{_num(y_at(value))}" '
                        f'r="2.5" fill="black"/>')
                else:
                    coords = " ".join(
                        f"{'M' if i == 0 else 'L'} {_num(x_at(year))} {_num(y_at(value))}"
                        for i, (year, value) in enumerate(run))
                    parts.append(
                        f'<path d="{coords}" fill="none" stroke="black" '
                        f'stroke-width="1.5"{dash}/>')
    else:
        parts.append(
            f'<text x="{(_PLOT_LEFT + _PLOT_RIGHT) / 2:g}" '
            f'y="{(_PLOT_TOP + _PLOT_BOTTOM) / 2:g}" font-family="sans-serif" '
            f'font-size="16" text-anchor="middle" fill="#888888">no data</text>')

    # legend, top right
    legend_x = _PLOT_RIGHT - 196
    for index, series in enumerate(series_list):
        pattern = STROKE_PATTERNS[index % len(STROKE_PATTERNS)]
        dash = f' stroke-dasharray="{pattern}"' if pattern else ""
        y = _PLOT_TOP + 10 + 16 * index
        parts.append(
            f'<line x1="{legend_x}" y1="{y}" x2="{legend_x + 26}" y2="{y}" '
            f'stroke="black" stroke-width="1.5"{dash}/>')
        parts.append(
            f'<text x="{legend_x + 32}" y="{y + 4}" font-family="sans-serif" '
            f'font-size="11">{escape(series.label)}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _data_runs(series):
    """Consecutive has-data points; a no-data point ends the run."""
    runs = []
    current = []
    for year in sorted(series.points):
        point = series.points[year]
        if point.has_data:
            current.append((year, point.frequency))
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs
