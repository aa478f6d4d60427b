"""Survey the resonance structure of a spherical shell barrier.

The script walks the full chain: Jost functions on the real axis, the
S-matrix and its unitarity, an argument-principle count of lower-half-plane
zeros, Newton-polished resonance poles, the Breit-Wigner shape they imprint
on the physical axis, and the exponentially growing Gamow states attached
to them.

Run from the repository root:

    python3 demos/01_resonance_survey.py
"""

import numpy as np

from hardylab import (
    ShellPotential,
    SurfacePoint,
    count_zeros,
    find_resonances,
    gamow_state,
    jost_coefficients,
)

pot = ShellPotential(a=1.0, b=2.0, V0=10.0)
print(f"potential: shell of height {pot.V0} on [{pot.a}, {pot.b}]")

# 1. Jost functions on the physical axis.  J-(k) = conj(J+(k)) for real k,
#    so S = J-/J+ is a pure phase there.
print("\n[1] Jost functions and S-matrix unitarity on the real axis")
for k in (0.5, 2.0, 5.0):
    jd = jost_coefficients(pot, SurfacePoint(complex(k)))
    print(
        f"  k = {k:4.1f}   |J+| = {abs(jd.Jplus):9.5f}"
        f"   |J- - conj(J+)| = {abs(jd.Jminus - np.conj(jd.Jplus)):.2e}"
        f"   ||S| - 1| = {abs(abs(jd.S) - 1.0):.2e}"
    )

# 2. Count zeros of J+ in a lower-half-plane rectangle before locating
#    them.  The trapezoid winding number must come out an exact integer.
rect = (0.05, 6.0, -2.0, -0.005)
n = count_zeros(pot, rect)
print(f"\n[2] argument principle: {n} zeros of J+ in rectangle {rect}")

# 3. Newton-polished resonances.  zn = kn^2 is the energy pole, the width
#    gamma = -2 Im zn sets the Breit-Wigner scale.
resonances = find_resonances(pot, rect, tol=1e-10)
print(f"\n[3] located {len(resonances)} resonance poles")
print("     kn                          E_n = Re zn   gamma      |J+(kn)|")
for res in resonances:
    k = res.point.k
    print(
        f"     {k.real:.6f} {k.imag:+.6f}i   {res.zn.real:9.5f}"
        f"   {res.gamma:8.5f}   {res.jplus_abs:.1e}"
    )

# 4. The narrowest pole shapes the physical axis: sin^2(delta) sweeps
#    through 1 across a window of width gamma around E_1.
res1 = resonances[0]
print(f"\n[4] Breit-Wigner sweep around E_1 = {res1.zn.real:.4f}")
for frac in (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0):
    e = res1.zn.real + frac * res1.gamma
    jd = jost_coefficients(pot, SurfacePoint(complex(np.sqrt(e))))
    delta = 0.5 * np.angle(jd.S)
    print(f"     E = E_1 {frac:+.1f} gamma   sin^2(delta) = {np.sin(delta) ** 2:.4f}")

# 5. The Gamow state: an outgoing-only eigenfunction at kn.  It solves the
#    radial equation pointwise but grows like e^{|Im kn| r}, so it is not
#    square integrable; no choice of Nn fixes that.
state = gamow_state(pot, res1)
print("\n[5] Gamow state of the narrowest resonance")
h = 1e-4
for r in (0.5, 1.5, 3.0, 10.0, 30.0):
    u = state(r)
    second = (state(r - h) - 2.0 * u + state(r + h)) / h**2
    resid = abs(-second + pot.evaluate(r) * u - res1.zn * u) / (
        abs(res1.zn) * abs(u)
    )
    print(f"     r = {r:5.1f}   |u| = {abs(u):12.6e}   ODE residual = {resid:.1e}")
print("     the modulus keeps growing with r: a pole state, not a bound state")
