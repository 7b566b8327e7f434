"""CSV and SVG writers for trajectories."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

CSV_COLUMNS = (
    "t",
    "re_b0", "im_b0", "re_b1", "im_b1", "re_b2", "im_b2", "re_b3", "im_b3",
    "p0", "p1", "p2", "p3",
    "p_ghz", "p_ghz_max",
)
SCALED_TIME_COLUMN = "omega_t"

SVG_WIDTH, SVG_HEIGHT = 960, 600
_PLOT = dict(left=90, right=200, top=40, bottom=70)
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
_DASHES = ("", "2,4", "8,5", "8,4,2,4")


def format_float(x: float) -> str:
    """12 significant digits; scientific notation below 1e-4 in magnitude."""
    x = float(x)
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def _write(path: Path, text: str) -> Path:
    path = Path(path)
    try:
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def csv_text(traj, emit_scaled_time: bool = False) -> str:
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    buf = io.StringIO()
    for key, value in traj.metadata.items():
        buf.write(f"# {key}: {value}\n")
    columns = list(CSV_COLUMNS)
    if emit_scaled_time:
        columns.append(SCALED_TIME_COLUMN)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)

    amps = traj.amplitudes
    pops = traj.populations
    for i, t in enumerate(traj.times):
        row = [t]
        for b in amps[i]:
            row += [b.real, b.imag]
        row += list(pops[i])
        row += [traj.p_ghz[i], traj.p_ghz_max[i]]
        if emit_scaled_time:
            row.append(traj.params.omega_rabi * t)
        writer.writerow([format_float(v) for v in row])
    return buf.getvalue()


def emit_csv(traj, path, emit_scaled_time: bool = False) -> Path:
    return _write(path, csv_text(traj, emit_scaled_time))


def read_csv(path) -> tuple[dict, dict]:
    """Metadata and columns (as float arrays) of a CSV written by emit_csv."""
    meta, lines = {}, []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = value.strip()
        elif line:
            lines.append(line)
    rows = list(csv.reader(lines))
    header, data = rows[0], np.array(rows[1:], dtype=float).reshape(-1, len(rows[0]))
    return meta, {name: data[:, j] for j, name in enumerate(header)}


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    k = 0
    while first + k * step <= hi + 1e-9 * span:
        ticks.append(first + k * step)
        k += 1
    return ticks


def svg_text(trajectories, title: str = "", legend_title: str = "") -> str:
    trajs = list(trajectories)
    if not trajs or any(len(tr) == 0 for tr in trajs):
        raise ValueError("need at least one non-empty trajectory")
    t_lo = min(float(tr.times[0]) for tr in trajs)
    t_hi = max(float(tr.times[-1]) for tr in trajs)
    if t_hi == t_lo:
        t_hi = t_lo + 1.0

    x0, x1 = _PLOT["left"], SVG_WIDTH - _PLOT["right"]
    y0, y1 = _PLOT["top"], SVG_HEIGHT - _PLOT["bottom"]

    def sx(t):
        return x0 + (t - t_lo) / (t_hi - t_lo) * (x1 - x0)

    def sy(p):
        return y1 - p * (y1 - y0)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" '
        f'width="{SVG_WIDTH}" height="{SVG_HEIGHT}" font-family="sans-serif" font-size="14">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{(x0 + x1) / 2:.1f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>')

    for tick in _nice_ticks(t_lo, t_hi):
        x = sx(tick)
        out.append(f'<line x1="{x:.2f}" y1="{y1}" x2="{x:.2f}" y2="{y1 + 6}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y1 + 22}" text-anchor="middle">{tick:g}</text>')
    for tick in np.linspace(0.0, 1.0, 6):
        y = sy(tick)
        out.append(f'<line x1="{x0}" y1="{y:.2f}" x2="{x1}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{x0 - 10}" y="{y + 5:.2f}" text-anchor="end">{tick:.1f}</text>')
    out.append(f'<rect x="{x0}" y="{y0}" width="{x1 - x0}" height="{y1 - y0}" fill="none" stroke="black"/>')
    out.append(f'<text x="{(x0 + x1) / 2:.1f}" y="{SVG_HEIGHT - 20}" text-anchor="middle">t (fs)</text>')
    out.append(f'<text x="25" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 25 {(y0 + y1) / 2:.1f})">℘(GHZ)</text>')

    legend_x = x1 + 20
    if legend_title:
        out.append(f'<text x="{legend_x}" y="{y0 + 10}">{escape(legend_title)}</text>')
    for k, tr in enumerate(trajs):
        color = _COLORS[k % len(_COLORS)]
        dash = _DASHES[k % len(_DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        points = " ".join(f"{sx(t):.2f},{sy(p):.2f}" for t, p in zip(tr.times, tr.p_ghz))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{points}"/>')
        ly = y0 + 35 + 24 * k
        out.append(f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 30}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"{dash_attr}/>')
        out.append(f'<text x="{legend_x + 38}" y="{ly + 5}">{escape(tr.label or f"run {k + 1}")}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(trajectories, path, title: str = "", legend_title: str = "") -> Path:
    return _write(path, svg_text(trajectories, title, legend_title))
