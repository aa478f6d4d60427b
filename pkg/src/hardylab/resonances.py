"""Resonance poles of the shell S-matrix and the attached Gamow states.

Resonances are zeros of ``Jplus`` in the lower half momentum plane (second
energy sheet).  Counting uses the argument principle,

    winding = (1/2 pi i) * contour integral of Jplus'/Jplus dk,

evaluated by trapezoid quadrature on a rectangle boundary; location uses
Newton iteration with the analytic derivative, seeded by recursive
quadrisection of the counting rectangle.  Both ingredients self-diagnose:
a zero sitting on (or hugging) the contour, or quadrature too coarse to
give an integer, raise instead of silently miscounting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NonIntegerWinding, ZeroOnContour
from .scattering import (
    Eigenfunction,
    ShellPotential,
    SurfacePoint,
    _inner_momentum,
    _sinc,
    jost_coefficients,
    jost_plus,
    jost_plus_prime,
)

__all__ = ["Resonance", "count_zeros", "find_resonances", "gamow_state"]


@dataclass(frozen=True)
class Resonance:
    """A lower-half-plane zero of Jplus.

    ``zn = kn**2`` is the pole position in energy, ``gamma = -2 Im zn`` the
    width, ``Nn`` the (freely choosable) Gamow normalization constant, and
    ``jplus_abs`` the residual magnitude of Jplus at the located zero.
    """

    point: SurfacePoint
    zn: complex
    gamma: float
    Nn: float = 1.0
    jplus_abs: float = 0.0

    def __post_init__(self):
        k = self.point.k
        if not (k.real > 0.0 and k.imag < 0.0):
            raise ValueError(
                f"resonance momentum must have Re k > 0 > Im k, got {k!r}"
            )
        scale = max(1.0, abs(self.zn))
        if abs(self.zn - k * k) > 1e-12 * scale:
            raise ValueError(f"zn = {self.zn!r} is not the square of kn = {k!r}")
        if abs(self.gamma + 2.0 * self.zn.imag) > 1e-12 * scale:
            raise ValueError(f"gamma = {self.gamma!r} must equal -2 Im zn")


def _rect_ok(rect):
    re_lo, re_hi, im_lo, im_hi = map(float, rect)
    if not (re_lo < re_hi and im_lo < im_hi):
        raise ValueError(f"degenerate rectangle {rect!r}")
    return re_lo, re_hi, im_lo, im_hi


def _boundary_nodes(rect, n_boundary):
    """Counterclockwise closed polyline over the rectangle boundary."""
    re_lo, re_hi, im_lo, im_hi = rect
    corners = [
        complex(re_lo, im_lo),
        complex(re_hi, im_lo),
        complex(re_hi, im_hi),
        complex(re_lo, im_hi),
        complex(re_lo, im_lo),
    ]
    perim = 2.0 * ((re_hi - re_lo) + (im_hi - im_lo))
    edges = []
    for c0, c1 in zip(corners[:-1], corners[1:]):
        n = max(8, int(round(n_boundary * abs(c1 - c0) / perim)))
        t = np.linspace(0.0, 1.0, n + 1)
        edges.append(c0 + (c1 - c0) * t)
    return edges


def count_zeros(
    pot: ShellPotential, rect, n_boundary: int = 4096, zero_tol: float = 1e-6
) -> int:
    """Number of Jplus zeros inside ``rect = (re_lo, re_hi, im_lo, im_hi)``.

    Raises ZeroOnContour if ``|Jplus| < zero_tol`` at any boundary sample and
    NonIntegerWinding if the quadrature misses an integer by more than 1e-3.
    The default guard suits order-one rectangles; refinement loops that
    shrink boxes around a zero must scale ``zero_tol`` down with the box
    (the boundary is then legitimately close to the zero) and lean on the
    NonIntegerWinding diagnostic instead.
    """
    rect = _rect_ok(rect)
    total = 0j
    for nodes in _boundary_nodes(rect, n_boundary):
        jp = jost_plus(pot, nodes)
        if np.min(np.abs(jp)) < zero_tol:
            raise ZeroOnContour(
                f"|Jplus| = {np.min(np.abs(jp)):.2e} on the counting contour"
            )
        f = jost_plus_prime(pot, nodes) / jp
        total += np.sum((f[:-1] + f[1:]) * np.diff(nodes)) / 2.0
    winding = total / (2j * np.pi)
    w = float(np.real(winding))
    if abs(winding - round(w)) > 1e-3:
        raise NonIntegerWinding(
            f"winding {winding:.6f} not within 1e-3 of an integer "
            f"(n_boundary = {n_boundary} too coarse?)"
        )
    return int(round(w))


def _count_robust(pot, rect, n_boundary, zero_tol=1e-6):
    """count_zeros with automatic refinement when the contour is unlucky."""
    for n in (n_boundary, 4 * n_boundary, 16 * n_boundary):
        try:
            return count_zeros(pot, rect, n, zero_tol)
        except NonIntegerWinding:
            continue
    raise NonIntegerWinding(f"winding not resolved on {rect!r}")


def _split(rect, fx, fy):
    re_lo, re_hi, im_lo, im_hi = rect
    xm = re_lo + fx * (re_hi - re_lo)
    ym = im_lo + fy * (im_hi - im_lo)
    return [
        (re_lo, xm, im_lo, ym),
        (xm, re_hi, im_lo, ym),
        (re_lo, xm, ym, im_hi),
        (xm, re_hi, ym, im_hi),
    ]


# split-line offsets tried in order when a zero hugs a proposed cut
_SPLIT_FRACTIONS = (0.5, 0.46, 0.54, 0.42, 0.58, 0.38, 0.62)


def _quadrisect(pot, rect, parent_count, n_boundary):
    """Split rect into four children whose counts are resolved and consistent."""
    # contour guard scaled with box size: small boxes sit legitimately close
    # to the zero they are isolating
    side = max(rect[1] - rect[0], rect[3] - rect[2])
    zero_tol = min(1e-6, 1e-2 * side)
    for fx in _SPLIT_FRACTIONS:
        for fy in _SPLIT_FRACTIONS:
            children = _split(rect, fx, fy)
            counts = []
            try:
                for child in children:
                    counts.append(_count_robust(pot, child, n_boundary, zero_tol))
            except (ZeroOnContour, NonIntegerWinding):
                continue
            if sum(counts) == parent_count:
                return [(c, n) for c, n in zip(children, counts) if n > 0]
    raise ConvergenceFailure(f"could not split {rect!r} cleanly")


def _newton(pot, k0, tol, max_iter=80):
    k = complex(k0)
    for _ in range(max_iter):
        j = complex(jost_plus(pot, k))
        jp = complex(jost_plus_prime(pot, k))
        if jp == 0:
            return None
        step = j / jp
        k -= step
        if abs(step) < 1e-14 * max(1.0, abs(k)):
            break
    if abs(complex(jost_plus(pot, k))) > tol:
        return None
    return k


def find_resonances(
    pot: ShellPotential,
    rect,
    tol: float = 1e-10,
    n_boundary: int = 4096,
) -> list[Resonance]:
    """Locate all Jplus zeros in ``rect``, sorted by increasing ``Re k``.

    Quadrisection isolates one zero per box, Newton (analytic derivative)
    polishes it to ``|Jplus| <= tol``.  A box that defeats Newton is split
    further; below box side 1e-6 the search gives up with
    ConvergenceFailure.
    """
    rect = _rect_ok(rect)
    total = _count_robust(pot, rect, n_boundary)
    if total == 0:
        return []
    work = [(rect, total)]
    roots: list[complex] = []
    while work:
        box, cnt = work.pop()
        side = max(box[1] - box[0], box[3] - box[2])
        if cnt == 1:
            k = _newton(pot, complex(0.5 * (box[0] + box[1]), 0.5 * (box[2] + box[3])), tol)
            inside = k is not None and (
                box[0] - 1e-9 <= k.real <= box[1] + 1e-9
                and box[2] - 1e-9 <= k.imag <= box[3] + 1e-9
            )
            if inside:
                roots.append(k)
                continue
        if side < 1e-6:
            raise ConvergenceFailure(
                f"Newton failed for box {box!r} below minimum subdivision size"
            )
        work.extend(_quadrisect(pot, box, cnt, n_boundary))
    # dedupe (two boxes can, pathologically, polish to one zero)
    uniq: list[complex] = []
    for k in sorted(roots, key=lambda kk: (kk.real, kk.imag)):
        if all(abs(k - u) > 1e-8 for u in uniq):
            uniq.append(k)
    if len(uniq) != total:
        raise ConvergenceFailure(
            f"located {len(uniq)} zeros but the winding number says {total}"
        )
    out = []
    for k in uniq:
        zn = k * k
        out.append(
            Resonance(
                point=SurfacePoint.from_k(k),
                zn=zn,
                gamma=-2.0 * zn.imag,
                Nn=1.0,
                jplus_abs=abs(complex(jost_plus(pot, k))),
            )
        )
    return out


def gamow_state(pot: ShellPotential, res: Resonance, Nn: float | None = None) -> Eigenfunction:
    """Gamow eigenfunction attached to a resonance pole.

    Piecewise, with every coefficient evaluated at ``kn``:

        Nn * sin(kn r) / J3                     on (0, a)
        Nn * (J1 e^{i kappa r} + J2 e^{-i kappa r}) / J3   on (a, b)
        Nn * e^{i kn r}                         on (b, infinity)

    The outer region is purely outgoing by fiat; the matching residue it
    drops is of order ``|J4(kn)| ~ |Jplus(kn)|``, i.e. the Newton residual.
    The state is not square integrable: it grows like ``e^{|Im kn| r}``.
    """
    scale = res.Nn if Nn is None else float(Nn)
    k = res.point.k
    jd = jost_coefficients(pot, res.point)
    a, b = pot.a, pot.b
    kap = complex(_inner_momentum(pot, k))
    sa, ca = np.sin(k * a), np.cos(k * a)
    inv3 = scale / jd.J3

    def u(r):
        rr = np.asarray(r, dtype=float)
        flat = np.atleast_1d(rr).astype(float)
        out = np.empty(flat.shape, dtype=complex)
        m1 = flat < a
        m2 = (flat >= a) & (flat <= b)
        m3 = flat > b
        out[m1] = inv3 * np.sin(k * flat[m1])
        rm = flat[m2] - a
        out[m2] = inv3 * (sa * np.cos(kap * rm) + k * ca * rm * _sinc(kap * rm))
        out[m3] = scale * np.exp(1j * k * flat[m3])
        if rr.shape:
            return out.reshape(rr.shape)
        return complex(out[0])

    return Eigenfunction("gamow", res.point, u)
