"""Zero counting, pole location, and Gamow states for the reference shell.

The frozen momenta in conftest came from the recursive bisection oracle;
here the Newton-refined positions are checked against them and against
local self-consistency (unit winding in a tight box, mirror zeros,
residual of the defining ODE).
"""

import numpy as np
import pytest

from hardylab.errors import NonIntegerWinding, ZeroOnContour
from hardylab.resonances import Resonance, count_zeros, find_resonances, gamow_state
from hardylab.scattering import ShellPotential, SurfacePoint, jost_coefficients, jost_plus
from .conftest import KN_FROZEN, SEARCH_RECT


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def test_count_zeros_reference_rectangle(shell10):
    assert count_zeros(shell10, SEARCH_RECT) == 3


def test_count_zeros_free_potential_is_zero():
    assert count_zeros(ShellPotential(1.0, 2.0, 0.0), SEARCH_RECT) == 0


def test_count_zeros_additivity(shell10):
    left = (0.05, 3.0, -2.0, -0.005)
    right = (3.0, 6.0, -2.0, -0.005)
    assert count_zeros(shell10, left) + count_zeros(shell10, right) == 3


def test_count_zeros_contour_guard(shell10):
    # a box hugging a zero has |Jplus| below the guard on every edge
    kn = KN_FROZEN[0]
    tiny = (kn.real - 1e-8, kn.real + 1e-8, kn.imag - 1e-8, kn.imag + 1e-8)
    with pytest.raises(ZeroOnContour):
        count_zeros(shell10, tiny)
    # shrinking the guard with the box is the documented escape hatch
    assert count_zeros(shell10, tiny, zero_tol=0.0) == 1


def test_count_zeros_coarse_quadrature_is_diagnosed(shell10):
    with pytest.raises((NonIntegerWinding, ZeroOnContour)):
        count_zeros(shell10, SEARCH_RECT, n_boundary=8)


def test_count_zeros_rejects_degenerate_rectangle(shell10):
    with pytest.raises(ValueError):
        count_zeros(shell10, (1.0, 1.0, -2.0, -0.005))


def test_count_stable_under_contour_perturbation(shell10):
    re_lo, re_hi, im_lo, im_hi = SEARCH_RECT
    d = 1e-3
    # the inner top edge passes 3.3e-3 below the first zero; boundary
    # sampling must resolve that approach, hence the denser contour
    inner = (re_lo + d, re_hi - d, im_lo + d, im_hi - d)
    assert count_zeros(shell10, inner, n_boundary=16384) == 3
    assert count_zeros(shell10, (re_lo - d, re_hi + d, im_lo - d, im_hi + d / 2)) == 3


# ---------------------------------------------------------------------------
# location
# ---------------------------------------------------------------------------

def test_find_resonances_matches_frozen_oracle(shell_resonances):
    for res, kn in zip(shell_resonances, KN_FROZEN):
        assert abs(res.point.k - kn) < 1e-8


def test_find_resonances_free_potential_empty():
    assert find_resonances(ShellPotential(1.0, 2.0, 0.0), SEARCH_RECT, tol=1e-10) == []


def test_resonance_fields_are_consistent(shell_resonances):
    for res in shell_resonances:
        k = res.point.k
        assert k.real > 0 and k.imag < 0
        assert res.point.sheet == "II"
        assert abs(res.zn - k * k) < 1e-14 * abs(res.zn)
        assert abs(res.gamma + 2 * res.zn.imag) < 1e-14 * abs(res.gamma)
        assert res.zn.imag < 0
        assert res.gamma > 0
        assert res.jplus_abs < 1e-10


def test_found_list_is_sorted_by_real_part(shell_resonances):
    res = [r.point.k.real for r in shell_resonances]
    assert res == sorted(res)


def test_each_resonance_has_unit_local_winding(shell10, shell_resonances):
    for res in shell_resonances:
        k = res.point.k
        h = 0.5e-4
        box = (k.real - h, k.real + h, k.imag - h, k.imag + h)
        assert count_zeros(shell10, box, zero_tol=0.0) == 1


def test_s_matrix_blows_up_at_poles(shell10, shell_resonances):
    # |S| ~ C / distance near a simple Jplus zero: one decade per decade
    for res in shell_resonances:
        k = res.point.k
        s7 = abs(jost_coefficients(shell10, SurfacePoint.from_k(k + 1e-7 * np.exp(0.7j))).S)
        s8 = abs(jost_coefficients(shell10, SurfacePoint.from_k(k + 1e-8 * np.exp(0.7j))).S)
        assert max(s7, s8) > 1e6
        assert abs(s8 / s7 - 10) < 2.0


def test_antiresonance_mirror_zeros(shell10, shell_resonances):
    for res in shell_resonances:
        km = -np.conj(res.point.k)
        assert abs(complex(jost_plus(shell10, km))) < 1e-8


# ---------------------------------------------------------------------------
# Gamow states
# ---------------------------------------------------------------------------

def test_gamow_state_ode_residual(shell10, shell_resonances):
    h = 1e-4
    for res in shell_resonances:
        u = gamow_state(shell10, res)
        rs = np.linspace(0.05, shell10.b + 5.0, 100)
        rs = rs[(np.abs(rs - shell10.a) > 2 * h) & (np.abs(rs - shell10.b) > 2 * h)]
        vals, up, um = u(rs), u(rs + h), u(rs - h)
        upp = (up - 2 * vals + um) / h**2
        resid = np.abs(-upp + shell10.evaluate(rs) * vals - res.zn * vals)
        assert np.max(resid / (abs(res.zn) * np.abs(vals))) < 1e-6


def test_gamow_state_normalization_scales_out(shell10, shell_resonances):
    res = shell_resonances[0]
    u1 = gamow_state(shell10, res)
    u2 = gamow_state(shell10, res, Nn=2.5)
    rs = np.linspace(0.2, 6.0, 17)
    assert np.max(np.abs(u2(rs) - 2.5 * u1(rs))) < 1e-12 * np.max(np.abs(u2(rs)))


def test_gamow_state_outer_region_is_purely_outgoing(shell10, shell_resonances):
    res = shell_resonances[0]
    u = gamow_state(shell10, res)
    rs = np.linspace(shell10.b + 0.5, shell10.b + 10.0, 7)
    k = res.point.k
    # purely outgoing: u(r) proportional to e^{i k r}, no incoming admixture
    ratio = u(rs) / np.exp(1j * k * rs)
    assert np.max(np.abs(ratio - ratio[0])) < 1e-10 * abs(ratio[0])


def test_gamow_state_exponential_catastrophe(shell10, shell_resonances):
    # log |u| - |Im k| r is exactly flat past the shell: growth e^{|Im k| r}
    res = shell_resonances[0]
    u = gamow_state(shell10, res)
    rs = np.linspace(shell10.b, shell10.b + 50.0, 200)
    lg = np.log(np.abs(u(rs))) - abs(res.point.k.imag) * rs
    assert np.max(lg) - np.min(lg) < 1e-9
    assert np.abs(u(rs[-1])) > np.abs(u(rs[0]))


def test_gamow_state_boundary_and_continuity(shell10, shell_resonances):
    res = shell_resonances[1]
    u = gamow_state(shell10, res)
    assert u(0.0) == 0.0
    for r0 in (shell10.a, shell10.b):
        lo, hi = u(r0 - 1e-12), u(r0 + 1e-12)
        assert abs(lo - hi) < 1e-8 * max(1, abs(lo))


def test_gamow_state_rejects_invalid_resonance(shell10):
    upper = SurfacePoint(2.0 + 0.5j)
    with pytest.raises(ValueError):
        Resonance(point=upper, zn=upper.z, gamma=-2 * upper.z.imag, jplus_abs=0.0)
