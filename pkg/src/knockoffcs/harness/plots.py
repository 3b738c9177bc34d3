"""Static SVG charts for sweep summaries. No plotting library involved."""

from __future__ import annotations

import logging
from pathlib import Path
from xml.sax.saxutils import escape

log = logging.getLogger(__name__)

WIDTH, HEIGHT = 480, 340
MARGIN = dict(left=64, right=120, top=36, bottom=52)
COLORS = {"knockoffcs": "#1b6ca8", "lasso": "#d1495b", "omp": "#2e933c"}
MARKERS = {"knockoffcs": "circle", "lasso": "square", "omp": "diamond"}


def _snr_value(label) -> float:
    return float("inf") if label == "noiseless" else float(label)


def _fmt(v: float) -> str:
    return f"{v:.3g}"


def _range(values, lo=None, hi=None):
    vmin = min(values) if lo is None else min(lo, min(values))
    vmax = max(values) if hi is None else max(hi, max(values))
    if vmax == vmin:
        pad = abs(vmax) * 0.1 or 1.0
        vmin, vmax = vmin - pad, vmax + pad
    return vmin, vmax


class _Canvas:
    def __init__(self, title, xlabel, ylabel, xrange, yrange):
        self.x0, self.x1 = xrange
        self.y0, self.y1 = yrange
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" font-size="13">{escape(title)}</text>',
        ]
        L, R, T, B = MARGIN["left"], WIDTH - MARGIN["right"], MARGIN["top"], HEIGHT - MARGIN["bottom"]
        self.box = (L, R, T, B)
        self.parts.append(f'<rect x="{L}" y="{T}" width="{R - L}" height="{B - T}" fill="none" stroke="black"/>')
        self.parts.append(
            f'<text x="{(L + R) / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>'
        )
        self.parts.append(
            f'<text x="16" y="{(T + B) / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {(T + B) / 2:.1f})">{escape(ylabel)}</text>'
        )

    def px(self, x):
        L, R, _, _ = self.box
        return L + (x - self.x0) / (self.x1 - self.x0) * (R - L)

    def py(self, y):
        _, _, T, B = self.box
        return B - (y - self.y0) / (self.y1 - self.y0) * (B - T)

    def yticks(self, count=5):
        L, _, _, _ = self.box
        for i in range(count + 1):
            v = self.y0 + (self.y1 - self.y0) * i / count
            y = self.py(v)
            self.parts.append(f'<line x1="{L - 4}" y1="{y:.1f}" x2="{L}" y2="{y:.1f}" stroke="black"/>')
            self.parts.append(f'<text x="{L - 6}" y="{y + 4:.1f}" text-anchor="end">{_fmt(v)}</text>')

    def xticks(self, ticks):
        _, _, _, B = self.box
        for v, label in ticks:
            x = self.px(v)
            self.parts.append(f'<line x1="{x:.1f}" y1="{B}" x2="{x:.1f}" y2="{B + 4}" stroke="black"/>')
            self.parts.append(f'<text x="{x:.1f}" y="{B + 16}" text-anchor="middle">{escape(label)}</text>')

    def marker(self, method, x, y):
        c = COLORS.get(method, "#555555")
        X, Y = self.px(x), self.py(y)
        shape = MARKERS.get(method, "circle")
        if shape == "square":
            self.parts.append(f'<rect x="{X - 3.5:.1f}" y="{Y - 3.5:.1f}" width="7" height="7" fill="{c}"/>')
        elif shape == "diamond":
            pts = f"{X:.1f},{Y - 4.5:.1f} {X + 4.5:.1f},{Y:.1f} {X:.1f},{Y + 4.5:.1f} {X - 4.5:.1f},{Y:.1f}"
            self.parts.append(f'<polygon points="{pts}" fill="{c}"/>')
        else:
            self.parts.append(f'<circle cx="{X:.1f}" cy="{Y:.1f}" r="3.5" fill="{c}"/>')

    def polyline(self, method, pts):
        if len(pts) < 2:
            return
        c = COLORS.get(method, "#555555")
        coords = " ".join(f"{self.px(x):.1f},{self.py(y):.1f}" for x, y in pts)
        self.parts.append(f'<polyline points="{coords}" fill="none" stroke="{c}" stroke-width="1.5"/>')

    def label(self, x, y, text):
        self.parts.append(f'<text x="{self.px(x) + 5:.1f}" y="{self.py(y) - 5:.1f}" font-size="9">{escape(text)}</text>')

    def legend(self, methods):
        _, R, T, _ = self.box
        for i, method in enumerate(methods):
            y = T + 12 + 16 * i
            c = COLORS.get(method, "#555555")
            self.parts.append(f'<rect x="{R + 10}" y="{y - 8}" width="10" height="10" fill="{c}"/>')
            self.parts.append(f'<text x="{R + 26}" y="{y + 1}">{escape(method)}</text>')

    def svg(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _snr_positions(labels):
    ordered = sorted(set(labels), key=_snr_value)
    return {lab: float(i) for i, lab in enumerate(ordered)}, ordered


def line_chart(rows, metric: str, title: str, ylabel: str, unit_range=False) -> str:
    methods = list(dict.fromkeys(r["method"] for r in rows))
    pos, ordered = _snr_positions([r["snr_db"] for r in rows])
    ys = [r[f"{metric}_mean"] for r in rows]
    yr = _range(ys, 0.0, 1.0) if unit_range else _range(ys, 0.0)
    xr = (-0.5, max(len(ordered) - 0.5, 0.5))
    cv = _Canvas(title, "SNR (dB)", ylabel, xr, yr)
    cv.yticks()
    cv.xticks([(pos[lab], str(lab)) for lab in ordered])
    for method in methods:
        pts = sorted(
            ((pos[r["snr_db"]], r[f"{metric}_mean"]) for r in rows if r["method"] == method)
        )
        cv.polyline(method, pts)
        for x, y in pts:
            cv.marker(method, x, y)
    cv.legend(methods)
    return cv.svg()


def tradeoff_chart(rows, title: str) -> str:
    methods = list(dict.fromkeys(r["method"] for r in rows))
    xs = [r["fdp_mean"] for r in rows]
    ys = [r["power_mean"] for r in rows]
    cv = _Canvas(title, "FDR (mean FDP)", "power", _range(xs, 0.0, 1.0), _range(ys, 0.0, 1.0))
    cv.yticks()
    cv.xticks([(v, _fmt(v)) for v in (0.0, 0.25, 0.5, 0.75, 1.0)])
    seen = set()
    for r in rows:
        x, y = r["fdp_mean"], r["power_mean"]
        cv.marker(r["method"], x, y)
        spot = (round(x, 3), round(y, 3))
        if spot not in seen:
            seen.add(spot)
            cv.label(x, y, str(r["snr_db"]))
    cv.legend(methods)
    return cv.svg()


CHARTS = (
    ("f1", "F1 score"),
    ("tradeoff", None),
    ("relative_error", "relative error"),
    ("measurement_error", "measurement error"),
)


def emit_plots(summary_rows, out_dir) -> list[Path]:
    """Four SVGs per (n, m, s) group; returns the written paths."""
    rows = [r for r in summary_rows if r.get("count", 1) > 0]
    if not rows:
        log.warning("no summary rows with successful trials; no plots written")
        return []
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    groups: dict = {}
    for r in rows:
        groups.setdefault((int(r["n"]), int(r["m"]), int(r["s"])), []).append(r)
    written = []
    for (n, m, s), grp in sorted(groups.items()):
        tag = f"n{n}_m{m}_s{s}"
        where = f"(n={n}, m={m}, s={s})"
        for metric, ylabel in CHARTS:
            if metric == "tradeoff":
                svg = tradeoff_chart(grp, f"FDR-power trade-off {where}")
            else:
                svg = line_chart(grp, metric, f"{ylabel} vs SNR {where}", ylabel, unit_range=metric == "f1")
            path = out / f"{metric}_{tag}.svg"
            path.write_text(svg)
            written.append(path)
    return written
