"""Energy-representation transforms and the full-line Fourier transform.

The half-line transforms send f(r) to

    fhat_0(z)   = integral_0^inf  conj(chi_0(r; conj z))  f(r) dr
    fhat_pm(z)  = integral_0^inf  conj(chi_pm(r; conj z)) f(r) dr

with the conj-at-the-conjugate-point convention taken literally, so each
continued transform is analytic in z (not anti-analytic).  On the real
axis the kernels reduce to the delta-normalized eigenfunctions and the
transforms are isometries of L^2.

Truncation policy: compact supports are integrated exactly; otherwise the
cut radius comes from the input's decay certificate and is re-certified
against the computed value, so |integrand(cut)| < 1e-16 |value| holds for
the reported truncation_radius.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DivergentIntegrand, SingularMatching
from .quadrature import QuadratureConfig, integrate, refine_edges
from .scattering import (
    ShellPotential,
    SurfacePoint,
    free_eigenfunction,
    jost_coefficients,
    ls_eigenfunction,
)
from .testfuncs import TestFunction

__all__ = [
    "TransformResult",
    "transform_free",
    "transform_ls",
    "fourier_line",
    "wavefun_k_to_E",
    "wavefun_E_to_k",
]

_LOG_TINY = float(np.log(1e-16))


@dataclass(frozen=True)
class TransformResult:
    """Value of one transform evaluation plus its accounting.

    ``abs_error_estimate`` adds the quadrature error to a certified bound
    on the discarded tail; ``truncation_radius`` is where the integrand
    was cut (the exact support edge for compact inputs).
    """

    value: complex
    abs_error_estimate: float
    truncation_radius: float


def _reject_divergent(f: TestFunction, p: SurfacePoint) -> None:
    # decay-class rejection outranks the domain bookkeeping: a polynomial
    # tail is divergent no matter which line it was meant for
    rate = abs(complex(p.k).imag)
    if not f.can_dominate(rate):
        raise DivergentIntegrand(
            f"decay class of {f.family!r} cannot dominate exp({rate:g} r)"
        )


def _require(f: TestFunction, domain: str) -> None:
    if f.representation != "position":
        raise ConfigError(
            "representation",
            f"transform inputs must be position-space, got {f.representation!r}",
        )
    if f.domain != domain:
        raise ConfigError(
            "domain", f"expected a {domain}-line function, got domain {f.domain!r}"
        )


def _tail_bound(log_g_at_cut: float, decay: float) -> float:
    """Bound exp(g) integrated past the cut by its value over the decay rate."""
    if log_g_at_cut < -700.0:
        return 0.0
    return float(np.exp(log_g_at_cut)) / max(decay, 1e-3)


def _halfline_transform(f, p, kernel, kern_log_pref, inner_breaks, freq, cfg):
    """Shared driver for transform_free and transform_ls.

    ``kernel`` maps r to the conjugated eigenfunction value;
    ``kern_log_pref`` is a certified constant with
    |kernel(r)| <= exp(kern_log_pref + |Im k| r) past the last break.
    """
    rate = abs(p.k.imag)
    if not f.can_dominate(rate):
        raise DivergentIntegrand(
            f"decay class of {f.family!r} cannot dominate exp({rate:g} r)"
        )

    def integrand(r):
        return np.conj(kernel(r)) * f(r)

    def run(lo, hi):
        edges = [lo, hi]
        for x in (*inner_breaks, f.peak_radius(rate)):
            if lo < x < hi:
                edges.append(x)
        edges = np.unique(np.asarray(edges, dtype=float))
        if cfg.oscillation_splitting:
            edges = refine_edges(edges, freq)
        return integrate(integrand, edges, cfg)

    if f.support is not None:
        lo, hi = max(f.support[0], 0.0), f.support[1]
        if hi <= lo:
            return TransformResult(0.0 + 0.0j, 0.0, 0.0)
        value, err = run(lo, hi)
        return TransformResult(value, err, hi)

    # certified cut, then re-certify against the actual magnitude
    last_break = max(inner_breaks) if inner_breaks else 0.0
    peak = f.peak_radius(rate)
    log_peak = float(f.log_envelope(peak)) + rate * peak + kern_log_pref
    hi = max(f.truncation_radius(rate, log_peak + _LOG_TINY), last_break + 1.0)
    value, err = run(0.0, hi)
    for _ in range(4):
        floor = max(abs(value), err, 1e-300)
        cut_log = float(f.log_envelope(hi)) + rate * hi + kern_log_pref
        if cut_log <= _LOG_TINY + np.log(floor):
            break
        new_hi = f.truncation_radius(rate, np.log(floor) + _LOG_TINY - kern_log_pref)
        if new_hi <= hi * (1.0 + 1e-9):
            break
        extra, extra_err = run(hi, new_hi)
        value, err, hi = value + extra, err + extra_err, new_hi
    delta = max(1e-6, 1e-3 * hi)

    def g(r):
        return float(f.log_envelope(r)) + rate * r + kern_log_pref

    decay = (g(hi - delta) - g(hi)) / delta
    return TransformResult(value, err + _tail_bound(g(hi), decay), hi)


def transform_free(f: TestFunction, p: SurfacePoint, cfg: QuadratureConfig | None = None) -> TransformResult:
    """Continued free transform fhat_0(z) at the surface point p.

    Integrates conj(chi_0(r; conj z)) f(r) over the half line.  Requires a
    position-space half-line input whose decay certificate dominates
    exp(|Im k| r); raises DivergentIntegrand otherwise and
    SingularMatching at k = 0.
    """
    cfg = cfg or QuadratureConfig()
    _reject_divergent(f, p)
    _require(f, "half")
    pc = p.conjugate()
    kernel = free_eigenfunction(pc)
    pref = -0.5 * float(np.log(np.pi * abs(pc.k)))
    return _halfline_transform(f, p, kernel, pref, (), abs(p.k.real), cfg)


def transform_ls(
    pot: ShellPotential,
    f: TestFunction,
    p: SurfacePoint,
    sign: str,
    cfg: QuadratureConfig | None = None,
) -> TransformResult:
    """Continued Lippmann-Schwinger transform fhat_pm(z) at p.

    Same contract as transform_free with kernel conj(chi_pm(r; conj z));
    raises PoleAtRequestedPoint when the selected Jost function vanishes
    at the conjugate point.
    """
    cfg = cfg or QuadratureConfig()
    _reject_divergent(f, p)
    _require(f, "half")
    pc = p.conjugate()
    kernel = ls_eigenfunction(pot, pc, sign)
    jd = jost_coefficients(pot, pc)
    denom = jd.Jplus if sign == "+" else jd.Jminus
    # outer-region kernel bound; the cut always lands past r = b
    pref = float(
        np.log((abs(jd.J3) + abs(jd.J4)) / (abs(denom) * np.sqrt(np.pi * abs(pc.k))))
    )
    kap = np.sqrt(complex(pc.k) ** 2 - pot.V0)
    freq = max(abs(p.k.real), abs(kap.real))
    return _halfline_transform(f, p, kernel, pref, (pot.a, pot.b), freq, cfg)


def fourier_line(
    f: TestFunction,
    q: complex,
    sign: str = "-",
    cfg: QuadratureConfig | None = None,
) -> TransformResult:
    """Full-line Fourier transform (1/sqrt(2 pi)) integral e^{-+ i q x} f(x) dx.

    ``sign`` "-" uses the kernel e^{-iqx} (the in-convention); "+" its
    inverse-convention mirror.  The input must be a position-space
    full-line function whose decay certificate dominates exp(|Im q| |x|).
    """
    cfg = cfg or QuadratureConfig()
    if sign not in ("-", "+"):
        raise ValueError(f"sign must be '-' or '+', got {sign!r}")
    q = complex(q)
    rate = abs(q.imag)
    if not f.can_dominate(rate):
        raise DivergentIntegrand(
            f"decay class of {f.family!r} cannot dominate exp({rate:g} |x|)"
        )
    if f.representation != "position" or f.domain != "full":
        raise ConfigError(
            "domain", "fourier_line needs a position-space full-line function"
        )
    # log|kernel| = s*x; the growth side is x > 0 when s > 0
    s = q.imag if sign == "-" else -q.imag
    pref = 1.0 / np.sqrt(2.0 * np.pi)
    phase = -1j * q if sign == "-" else 1j * q
    osc = phase - s  # purely imaginary remainder of the kernel exponent

    if f.family in ("bump", "gs", "gaussian"):
        # nonnegative families: combine the kernel growth with the envelope
        # decay inside one exponent, so neither factor overflows alone even
        # when their finite product is moderate
        def integrand(x):
            with np.errstate(over="ignore"):
                return pref * np.exp(s * x + f.log_envelope(x)) * np.exp(osc * x)
    else:
        def integrand(x):
            return pref * np.exp(phase * x) * f(x)

    log_pref = float(np.log(pref))

    if f.support is not None:
        lo, hi = f.support
        edges = refine_edges([lo, f.params["center"], hi], abs(q.real)) \
            if cfg.oscillation_splitting else np.array([lo, hi])
        value, err = integrate(integrand, edges, cfg)
        return TransformResult(value, err, hi)

    def side_cut(direction):
        r_side = max(s * direction, 0.0)
        peak = f.peak_radius(r_side, direction)
        log_peak = float(f.log_envelope(direction * peak)) + r_side * peak
        return f.truncation_radius(r_side, log_peak + _LOG_TINY, direction)

    hi = side_cut(+1)
    lo = side_cut(-1)

    def run(x_lo, x_hi):
        edges = [x_lo, x_hi]
        for d in (+1, -1):
            x_pk = d * f.peak_radius(max(s * d, 0.0), d)
            if x_lo < x_pk < x_hi:
                edges.append(x_pk)
        edges = np.unique(np.asarray(edges, dtype=float))
        if cfg.oscillation_splitting:
            edges = refine_edges(edges, abs(q.real))
        return integrate(integrand, edges, cfg)

    value, err = run(-lo, hi)
    for _ in range(4):
        floor = max(abs(value), err, 1e-300)
        target = np.log(floor) + _LOG_TINY - log_pref
        grew = False
        right_log = float(f.log_envelope(hi)) + s * hi + log_pref
        if right_log > _LOG_TINY + np.log(floor):
            new_hi = f.truncation_radius(max(s, 0.0), target, +1)
            if new_hi > hi * (1.0 + 1e-9):
                extra, e2 = run(hi, new_hi)
                value, err, hi, grew = value + extra, err + e2, new_hi, True
        left_log = float(f.log_envelope(-lo)) + s * (-lo) + log_pref
        if left_log > _LOG_TINY + np.log(floor):
            new_lo = f.truncation_radius(max(-s, 0.0), target, -1)
            if new_lo > lo * (1.0 + 1e-9):
                extra, e2 = run(-new_lo, -lo)
                value, err, lo, grew = value + extra, err + e2, new_lo, True
        if not grew:
            break
    delta = 1e-3 * max(hi, lo, 1.0)

    def g(x):
        return float(f.log_envelope(x)) + s * x + log_pref

    decay_right = (g(hi - delta) - g(hi)) / delta
    decay_left = (g(-lo + delta) - g(-lo)) / delta
    tail = _tail_bound(g(hi), decay_right) + _tail_bound(g(-lo), decay_left)
    return TransformResult(value, err + tail, max(hi, lo))


def wavefun_k_to_E(value, k):
    """Undo the sqrt(2k) Jacobian: phihat(E) = phihat(k)/sqrt(2k), E = k^2."""
    k = np.asarray(k)
    if np.any(k == 0):
        raise SingularMatching("Jacobian factor sqrt(2k) degenerates at k = 0")
    out = np.asarray(value) / np.sqrt(2.0 * k)
    return out if out.ndim else complex(out)


def wavefun_E_to_k(value, k):
    """Apply the sqrt(2k) Jacobian: phihat(k) = sqrt(2k) phihat(E)."""
    k = np.asarray(k)
    if np.any(k == 0):
        raise SingularMatching("Jacobian factor sqrt(2k) degenerates at k = 0")
    out = np.asarray(value) * np.sqrt(2.0 * k)
    return out if out.ndim else complex(out)
