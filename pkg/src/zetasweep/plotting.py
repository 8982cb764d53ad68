"""Deterministic SVG emission for result records.

The canvas is fixed at 800x500 units with linear axes; identical records
yield byte-identical files.  Error-status samples are drawn as distinct
cross markers on the baseline instead of polyline vertices.
"""

from __future__ import annotations

from .errors import ConfigError, EmptyProfileError
from .records import ResultRecord

CANVAS_W, CANVAS_H = 800, 500
MARGIN = 60

PLOT_KINDS = ("error_profile", "density_curve")


def _f(x: float) -> str:
    return format(x, ".3f")


def _scale(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def _points_for(record: ResultRecord, kind: str):
    if kind == "error_profile":
        rows = record.sample_rows()
        if not rows:
            raise ConfigError("record payload has no sample rows")
        ok = [(r[0], r[1]) for r in rows if r[2] == "ok"]
        bad = [r[0] for r in rows if r[2] != "ok"]
        if not ok:
            raise EmptyProfileError("no ok samples to plot")
        return ok, bad, ("tau", "E")
    if kind == "density_curve":
        rows = record.payload_objects("curve_point")
        if not rows:
            raise ConfigError("record payload has no density curve")
        return ([(r["horizon"], r["fraction"]) for r in rows], [],
                ("horizon", "hit fraction"))
    raise ConfigError(f"unknown plot kind {kind!r}")


def render_plot(record: ResultRecord, kind: str) -> str:
    """Render a record payload as SVG text; deterministic for equal records."""
    ok, bad, (xlabel, ylabel) = _points_for(record, kind)
    xs = [p[0] for p in ok] + bad
    ys = [p[1] for p in ok]
    x_lo, x_hi = _scale(xs)
    y_lo, y_hi = _scale(ys)
    span_x = CANVAS_W - 2 * MARGIN
    span_y = CANVAS_H - 2 * MARGIN

    def px(x: float) -> float:
        return MARGIN + (x - x_lo) / (x_hi - x_lo) * span_x

    def py(y: float) -> float:
        return CANVAS_H - MARGIN - (y - y_lo) / (y_hi - y_lo) * span_y

    digest = record.header.get("config_digest", "")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_W}" '
        f'height="{CANVAS_H}" viewBox="0 0 {CANVAS_W} {CANVAS_H}">',
        f'<rect x="0" y="0" width="{CANVAS_W}" height="{CANVAS_H}" '
        'fill="white"/>',
        f'<line x1="{MARGIN}" y1="{CANVAS_H - MARGIN}" '
        f'x2="{CANVAS_W - MARGIN}" y2="{CANVAS_H - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" '
        f'y2="{CANVAS_H - MARGIN}" stroke="black"/>',
    ]
    points = " ".join(f"{_f(px(x))},{_f(py(y))}" for x, y in ok)
    parts.append(f'<polyline points="{points}" fill="none" stroke="#1f77b4" '
                 'stroke-width="1.5"/>')
    base = CANVAS_H - MARGIN
    for x in bad:
        cx = px(x)
        parts.append(
            f'<path d="M {_f(cx - 4)} {_f(base - 4)} L {_f(cx + 4)} '
            f'{_f(base + 4)} M {_f(cx - 4)} {_f(base + 4)} L {_f(cx + 4)} '
            f'{_f(base - 4)}" stroke="#d62728" stroke-width="1.5"/>')
    labels = [
        (MARGIN, base + 20, format(x_lo, ".6g"), "start"),
        (CANVAS_W - MARGIN, base + 20, format(x_hi, ".6g"), "end"),
        (MARGIN - 8, base, format(y_lo, ".6g"), "end"),
        (MARGIN - 8, MARGIN + 4, format(y_hi, ".6g"), "end"),
        (CANVAS_W // 2, base + 40, xlabel, "middle"),
        (MARGIN, MARGIN - 16, ylabel, "start"),
        (CANVAS_W - MARGIN, MARGIN - 16, f"config {digest}", "end"),
    ]
    for x, y, text, anchor in labels:
        parts.append(f'<text x="{_f(x)}" y="{_f(y)}" font-family="monospace" '
                     f'font-size="12" text-anchor="{anchor}">{text}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot(record: ResultRecord, kind: str, path: str) -> None:
    svg = render_plot(record, kind)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
