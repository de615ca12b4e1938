"""Self-contained SVG line plots of spectra and potentials."""

import math
from xml.sax.saxutils import escape

import numpy as np

from .potentials import PotentialSpec, asymptotic_limits, evaluate, saturation_length, thresholds

__all__ = ["emit_plot", "plot_potential", "svg_line_plot", "nice_ticks"]

WIDTH, HEIGHT = 720, 460
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 36, 50


def nice_ticks(lo, hi, target=6):
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _padded(lo, hi, frac=0.05):
    if hi == lo:
        pad = abs(lo) * frac or 1.0
    else:
        pad = (hi - lo) * frac
    return lo - pad, hi + pad


def _fmt_tick(t):
    return f"{t:.6g}"


def svg_line_plot(x, y, *, xlabel, ylabel, title="", vlines=(), hlines=(), y_include=()):
    """Return an SVG document plotting ``y`` against ``x``.

    ``vlines`` / ``hlines`` are drawn dashed; ``y_include`` values are kept
    inside the y-range. Non-finite y values break the curve.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    finite = np.isfinite(y)
    if not finite.any():
        raise ValueError("nothing finite to plot")
    x0, x1 = _padded(float(x.min()), float(x.max()))
    ys = np.concatenate([y[finite], np.asarray(y_include, dtype=float)])
    y0, y1 = _padded(float(ys.min()), float(ys.max()))

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def px(v):
        return MARGIN_L + (v - x0) / (x1 - x0) * pw

    def py(v):
        return MARGIN_T + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]
    for t in nice_ticks(x0, x1):
        X = px(t)
        out.append(f'<line x1="{X:.2f}" y1="{MARGIN_T + ph}" x2="{X:.2f}" '
                   f'y2="{MARGIN_T + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X:.2f}" y="{MARGIN_T + ph + 18}" '
                   f'text-anchor="middle">{_fmt_tick(t)}</text>')
    for t in nice_ticks(y0, y1):
        Y = py(t)
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{Y:.2f}" x2="{MARGIN_L}" '
                   f'y2="{Y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{Y + 4:.2f}" '
                   f'text-anchor="end">{_fmt_tick(t)}</text>')

    for v in vlines:
        if x0 <= v <= x1:
            X = px(v)
            out.append(f'<line x1="{X:.2f}" y1="{MARGIN_T}" x2="{X:.2f}" y2="{MARGIN_T + ph}" '
                       'stroke="gray" stroke-dasharray="5,4"/>')
    for v in hlines:
        if y0 <= v <= y1:
            Y = py(v)
            out.append(f'<line x1="{MARGIN_L}" y1="{Y:.2f}" x2="{MARGIN_L + pw}" y2="{Y:.2f}" '
                       'stroke="gray" stroke-dasharray="2,3"/>')

    # one polyline per finite run
    runs, current = [], []
    for xi, yi, ok in zip(x, y, finite):
        if ok:
            current.append(f"{px(xi):.2f},{py(yi):.2f}")
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    for run in runs:
        out.append(f'<polyline fill="none" stroke="#c00000" stroke-width="1.5" '
                   f'points="{" ".join(run)}"/>')

    out.append(f'<text x="{MARGIN_L + pw / 2}" y="{HEIGHT - 12}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{MARGIN_T + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 16 {MARGIN_T + ph / 2})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _write(svg, path):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_plot(result, which, path, title=None):
    """Plot R (``which='R'``) or T against E, with the four thresholds marked."""
    if which not in ("R", "T"):
        raise ValueError(f"which must be 'R' or 'T', got {which!r}")
    if not result.points:
        raise ValueError("empty sweep result")
    E = result.energies
    values = result.big_r if which == "R" else result.big_t
    ref = 1.0 if which == "R" else 0.0
    meta = result.meta
    vlines = ()
    if "potential" in meta and "mass" in meta:
        pot = meta["potential"]
        spec = PotentialSpec(pot["kind"], pot["a"], pot["b"], pot["c"])
        vlines = thresholds(spec, meta["mass"]).sorted()
        if title is None:
            params = ", ".join(f"{k}={pot[k]:g}" for k in ("a", "b", "c") if pot[k] is not None)
            title = f"{which}(E), {pot['kind']} potential, {params}"
    _write(svg_line_plot(E, values, xlabel="E", ylabel=which, title=title or "",
                         vlines=vlines, hlines=(ref,), y_include=(ref,)), path)


def plot_potential(spec, path, x_range=None, n=801):
    """Plot V(x) with its two asymptotes."""
    if x_range is None:
        L = saturation_length(spec) / 3.0
        x_range = (-L, L)
    x = np.linspace(x_range[0], x_range[1], n)
    v_l, v_r = asymptotic_limits(spec)
    params = ", ".join(f"{k}={getattr(spec, k):g}" for k in ("a", "b", "c")
                       if getattr(spec, k) is not None)
    _write(svg_line_plot(x, evaluate(spec, x), xlabel="x", ylabel="V(x)",
                         title=f"{spec.kind.value} potential, {params}",
                         hlines=(v_l, v_r), vlines=(0.0,)), path)
