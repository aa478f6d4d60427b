"""Measure growth on expanding arcs and issue Hardy-class verdicts.

Transforms of well-behaved test functions are sampled on semicircular
arcs of doubling radius in the lower half plane.  Compactly supported
inputs grow exponentially (Paley-Wiener: the rate is the support width),
Gelfand-Shilov inputs grow at the conjugate power order, and both fail
the Hardy criterion.  A rational function with its pole in the upper half
plane stays bounded and is the only kind that passes.  One scan is also
rendered to an SVG plot.

Run from the repository root:

    python3 demos/03_growth_and_hardy.py
"""

import os

from hardylab import (
    ShellPotential,
    arc_scan,
    emit_plot,
    fit_growth,
    fourier_line,
    hardy_verdict,
    make_bump,
    make_gs,
    make_hardy_rational,
    transform_free,
    transform_ls,
)

OUT = os.path.join(os.path.dirname(__file__), "demo_out")

# 1. Paley-Wiener slope: the Fourier transform of a bump supported on
#    [-A, A] grows like e^{A |Im q|}.  The fitted slope recovers A.
print("[1] Paley-Wiener growth of bump Fourier transforms")
radii = tuple(5.0 * 1.5**j for j in range(6))
for a in (0.5, 1.0, 2.0):
    f = make_bump(a, center=0.0, domain="full")
    report = arc_scan(lambda p: fourier_line(f, p.k, "+").value, radii)
    fit = fit_growth(report, "linear-in-ImSqrt")
    print(f"  support width A = {a:3.1f}   fitted slope = {fit.coefficient:.4f}")

# 2. Gelfand-Shilov conjugacy: position decay of order a maps to energy
#    growth of the conjugate order b with 1/a + 1/b = 1.
print("\n[2] Gelfand-Shilov conjugate order")
gs = make_gs(alpha=1.0, a_gs=1.5)
report = arc_scan(lambda p: fourier_line(gs, p.k, "+").value, (2.0, 3.0, 4.5, 6.75, 10.0))
fit = fit_growth(report, "power-b_gs")
print(f"  a_gs = 1.5 input: fitted growth order b = {fit.exponent:.3f} (conjugate of a is 3)")

# 3. Hardy verdicts for scattering transforms of a compact bump: both the
#    free and the Lippmann-Schwinger images blow up on the arcs.
print("\n[3] Hardy verdicts")
pot = ShellPotential(1.0, 2.0, 10.0)
bump = make_bump(1.0, center=1.5)
arc_radii = tuple(5.0 * 2**j for j in range(6))
cases = {
    "free transform of bump": hardy_verdict(
        lambda p: transform_free(bump, p).value, arc_radii
    ),
    "ls transform of bump": hardy_verdict(
        lambda p: transform_ls(pot, bump, p, "+").value, arc_radii
    ),
    "rational, pole at +2i": hardy_verdict(
        lambda p: make_hardy_rational(2j).evaluator(p.z),
        (1280.0, 2560.0, 5120.0, 10240.0, 20480.0),
    ),
}
for name, verdict in cases.items():
    ev = verdict.evidence
    print(
        f"  {name:26s} arcs say {ev.verdict:20s} verdict: {verdict.verdict}"
        f"   (pole skips: {ev.pole_skips})"
    )

# 4. Render the bump scan.  The plot carries the arc maxima in decades and
#    the fitted trend line.
os.makedirs(OUT, exist_ok=True)
report = cases["free transform of bump"].evidence
fit = fit_growth(report, "linear-in-ImSqrt")
path = os.path.join(OUT, "bump_arc_scan.svg")
emit_plot(report, path, fit=fit, model="linear-in-ImSqrt")
print(f"\n[4] wrote {path}")
