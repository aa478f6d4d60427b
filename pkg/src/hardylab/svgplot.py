"""Deterministic, dependency-free SVG rendering of reports.

Plots are byte-stable for identical inputs: fixed canvas, fixed decimal
formatting, no timestamps or generated identifiers, so emitted SVG files
can be checksummed in a run manifest and diffed across runs.
"""

import numpy as np

from .analysis import ArcScanReport, GrowthFit, TimeSignal
from .errors import IoError

__all__ = ["emit_plot"]

W, H = 640.0, 420.0
ML, MR, MT, MB = 72.0, 24.0, 28.0, 48.0  # margins around the data box

_STYLE = (
    "text { font-family: monospace; font-size: 12px; fill: #222; }\n"
    ".axis { stroke: #222; stroke-width: 1; }\n"
    ".grid { stroke: #ccc; stroke-width: 0.5; }\n"
    ".data { stroke: #1f5fbf; stroke-width: 1.5; fill: none; }\n"
    ".pt { fill: #1f5fbf; }\n"
    ".fit { stroke: #c22; stroke-width: 1.2; fill: none; stroke-dasharray: 5 3; }\n"
    ".marker { stroke: #888; stroke-width: 1; stroke-dasharray: 3 3; }\n"
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _mapper(lo: float, hi: float, out_lo: float, out_hi: float):
    span = hi - lo if hi > lo else 1.0
    return lambda v: out_lo + (v - lo) / span * (out_hi - out_lo)


def _header(title: str) -> list:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.0f}" height="{H:.0f}" '
        f'viewBox="0 0 {W:.0f} {H:.0f}">',
        f"<style>{_STYLE}</style>",
        f'<rect x="0" y="0" width="{W:.0f}" height="{H:.0f}" fill="white"/>',
        f'<text x="{ML:.0f}" y="18">{title}</text>',
    ]


def _axes(lines, xlo, xhi, ylo, yhi, xlabel, ylabel, y_is_decades):
    """Frame, ticks and labels; returns the data-coordinate mappers."""
    mx = _mapper(xlo, xhi, ML, W - MR)
    my = _mapper(ylo, yhi, H - MB, MT)
    lines.append(
        f'<rect x="{_fmt(ML)}" y="{_fmt(MT)}" width="{_fmt(W - ML - MR)}" '
        f'height="{_fmt(H - MT - MB)}" fill="none" class="axis"/>'
    )
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = xlo + frac * (xhi - xlo)
        lines.append(
            f'<line x1="{_fmt(mx(xv))}" y1="{_fmt(H - MB)}" x2="{_fmt(mx(xv))}" '
            f'y2="{_fmt(H - MB + 4)}" class="axis"/>'
        )
        lines.append(
            f'<text x="{_fmt(mx(xv))}" y="{_fmt(H - MB + 18)}" '
            f'text-anchor="middle">{xv:.6g}</text>'
        )
        yv = ylo + frac * (yhi - ylo)
        label = f"1e{yv:.0f}" if y_is_decades else f"{yv:.6g}"
        lines.append(
            f'<line x1="{_fmt(ML - 4)}" y1="{_fmt(my(yv))}" x2="{_fmt(ML)}" '
            f'y2="{_fmt(my(yv))}" class="axis"/>'
        )
        lines.append(
            f'<text x="{_fmt(ML - 8)}" y="{_fmt(my(yv) + 4)}" '
            f'text-anchor="end">{label}</text>'
        )
        if 0.0 < frac < 1.0:
            lines.append(
                f'<line x1="{_fmt(ML)}" y1="{_fmt(my(yv))}" x2="{_fmt(W - MR)}" '
                f'y2="{_fmt(my(yv))}" class="grid"/>'
            )
    lines.append(
        f'<text x="{_fmt(0.5 * (ML + W - MR))}" y="{_fmt(H - 10)}" '
        f'text-anchor="middle">{xlabel}</text>'
    )
    lines.append(
        f'<text x="14" y="{_fmt(0.5 * (MT + H - MB))}" text-anchor="middle" '
        f'transform="rotate(-90 14 {_fmt(0.5 * (MT + H - MB))})">{ylabel}</text>'
    )
    return mx, my


def _legend(lines, entries):
    x, y = W - MR - 8.0, MT + 16.0
    for text in entries:
        lines.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="end">{text}</text>')
        y += 16.0


def _scan_svg(report: ArcScanReport, fit: GrowthFit | None, model: str) -> str:
    radii = np.asarray(report.radii, dtype=float)
    mods = np.maximum(np.asarray(report.max_modulus, dtype=float), 1e-300)
    ydec = np.log10(mods)
    ylo, yhi = float(np.floor(ydec.min())), float(np.ceil(ydec.max()))
    if yhi - ylo < 1.0:
        yhi = ylo + 1.0
    lines = _header("arc scan: max |fhat| over lower half-plane arcs")
    mx, my = _axes(
        lines, float(radii[0]), float(radii[-1]), ylo, yhi,
        "arc radius R", "max |fhat| (log scale)", True,
    )
    pts = " ".join(f"{_fmt(mx(r))},{_fmt(my(y))}" for r, y in zip(radii, ydec))
    lines.append(f'<polyline points="{pts}" class="data"/>')
    for r, y in zip(radii, ydec):
        lines.append(f'<circle cx="{_fmt(mx(r))}" cy="{_fmt(my(y))}" r="3" class="pt"/>')

    legend = [f"verdict: {report.verdict}"]
    overlay = None  # (callable R -> log10 max, label)
    if fit is not None and model == "power-b_gs":
        overlay = (
            lambda r: fit.coefficient * r**fit.exponent / np.log(10.0),
            f"fit: exp({fit.coefficient:.3g} R^{fit.exponent:.3g})",
        )
    elif fit is not None and model == "linear-in-ImSqrt":
        lnm = np.log(mods[1:])
        offset = float(np.mean(lnm - fit.coefficient * radii[1:]))
        overlay = (
            lambda r: (fit.coefficient * r + offset) / np.log(10.0),
            f"fit: slope {fit.coefficient:.4g} per unit R",
        )
    elif report.fitted_exponent > 0.0 and np.all(np.log(mods) > 0.0):
        p = report.fitted_exponent
        c = float(np.exp(np.mean(np.log(np.log(mods)) - p * np.log(radii))))
        overlay = (
            lambda r: c * r**p / np.log(10.0),
            f"trend: exp({c:.3g} R^{p:.3g})",
        )
    if overlay is not None:
        curve, label = overlay
        grid = np.linspace(radii[0], radii[-1], 120)
        vals = np.clip(curve(grid), ylo, yhi)
        pts = " ".join(f"{_fmt(mx(r))},{_fmt(my(v))}" for r, v in zip(grid, vals))
        lines.append(f'<polyline points="{pts}" class="fit"/>')
        legend.append(label)
    if fit is not None:
        legend.append(f"fit residual: {fit.residual:.3g}")
    else:
        legend.append(f"growth order: {report.fitted_exponent:.3g}")
    if report.pole_skips:
        legend.append(f"pole skips: {report.pole_skips}")
    _legend(lines, legend)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _signal_svg(signal: TimeSignal) -> str:
    t = np.asarray(signal.t_grid, dtype=float)
    mag = np.abs(np.asarray(signal.values, dtype=complex))
    ylo, yhi = 0.0, float(mag.max()) or 1.0
    lines = _header("time signal: |phi-tilde(t)|")
    mx, my = _axes(
        lines, float(t[0]), float(t[-1]), ylo, 1.08 * yhi, "t", "|phi-tilde(t)|", False
    )
    if t[0] < 0.0 < t[-1]:
        lines.append(
            f'<line x1="{_fmt(mx(0.0))}" y1="{_fmt(my(ylo))}" '
            f'x2="{_fmt(mx(0.0))}" y2="{_fmt(my(1.08 * yhi))}" class="marker"/>'
        )
        lines.append(
            f'<text x="{_fmt(mx(0.0) + 4)}" y="{_fmt(MT + 14)}">t = 0</text>'
        )
    pts = " ".join(f"{_fmt(mx(tt))},{_fmt(my(m))}" for tt, m in zip(t, mag))
    lines.append(f'<polyline points="{pts}" class="data"/>')
    for tt, m in zip(t, mag):
        lines.append(f'<circle cx="{_fmt(mx(tt))}" cy="{_fmt(my(m))}" r="2.5" class="pt"/>')
    _legend(
        lines,
        [
            f"peak |phi-tilde|: {yhi:.6g}",
            f"quadrature error: {signal.quadrature_error:.3g}",
        ],
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_plot(report, path: str, fit: GrowthFit | None = None, model: str = "") -> None:
    """Render an ArcScanReport or TimeSignal to a self-contained SVG file.

    Nothing is written when the report is empty or the path cannot be
    opened; both raise IoError.
    """
    if isinstance(report, ArcScanReport):
        if len(report.radii) == 0:
            raise IoError("cannot plot an arc scan with no radii")
        text = _scan_svg(report, fit, model)
    elif isinstance(report, TimeSignal):
        if len(report.t_grid) == 0:
            raise IoError("cannot plot an empty time signal")
        text = _signal_svg(report)
    else:
        raise IoError(f"no plot rendering for {type(report).__name__}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write plot to {path}: {exc}") from exc
