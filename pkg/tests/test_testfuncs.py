"""Test-function families: values, decay certificates, and guards."""

import numpy as np
import pytest
from scipy.integrate import quad

from hardylab.errors import ConfigError, PoleInLowerHalfPlane
from hardylab.quadrature import integrate
from hardylab.testfuncs import (
    conjugate_exponent,
    make_bump,
    make_gaussian,
    make_gs,
    make_hardy_rational,
)

# adaptive-quadrature value of the unit bump integral, pinned at 1e-12
BUMP_UNIT_INTEGRAL = 0.4439938161680793


# ---------------------------------------------------------------------------
# compact bump
# ---------------------------------------------------------------------------

def test_bump_center_value_and_support():
    f = make_bump(1.0, center=0.0)
    assert abs(f(0.0) - np.exp(-1.0)) < 1e-15
    assert f(1.0) == 0.0 and f(-1.0) == 0.0 and f(7.0) == 0.0
    assert f.support == (-1.0, 1.0)
    f2 = make_bump(0.5, center=1.5)
    assert f2.support == (1.0, 2.0)
    assert f2.domain == "half"
    assert make_bump(1.0, center=0.0).domain == "full"


def test_bump_vanishes_smoothly_at_the_edge():
    f = make_bump(1.0)
    # one-sided difference quotients of every order vanish with h:
    # f(1 - h) ~ e^{-1/(2h)} beats any power of h
    hs = np.array([1e-2, 1e-3, 1e-4])
    quotients = f(1.0 - hs) / hs**3
    assert np.all(np.diff(quotients) <= 0.0)
    assert quotients[0] < 1e-10
    assert f(1.0 - 1e-4) == 0.0


def test_bump_integral_matches_quadrature_oracle():
    f = make_bump(1.0)
    val, err = integrate(f, np.linspace(-1.0, 1.0, 33))
    assert abs(val - BUMP_UNIT_INTEGRAL) < 1e-12
    oracle, oracle_err = quad(f, -1.0, 1.0, epsabs=1e-14, epsrel=1e-13)
    assert abs(val - oracle) < 1e-12 + 10 * oracle_err


def test_bump_rejects_complex_arguments():
    f = make_bump(1.0)
    with pytest.raises(ValueError):
        f(0.5 + 0.1j)


def test_bump_parameter_validation():
    with pytest.raises(ConfigError) as err:
        make_bump(-1.0)
    assert err.value.field == "A"
    with pytest.raises(ConfigError) as err:
        make_bump(1.0, domain="line")
    assert err.value.field == "domain"


# ---------------------------------------------------------------------------
# Gelfand-Shilov family
# ---------------------------------------------------------------------------

def test_gs_order_two_is_a_scaled_gaussian():
    f = make_gs(1.0, 2.0)
    xs = np.linspace(-4.0, 4.0, 41)
    assert np.max(np.abs(f(xs) - np.exp(-(1.0 + xs**2) / 2.0))) < 1e-15


def test_gs_decay_certificate_ratio():
    for alpha, a_gs in ((1.0, 1.5), (0.7, 3.0), (2.0, 2.0)):
        f = make_gs(alpha, a_gs)
        xs = np.concatenate([np.linspace(1.0, 30.0, 5000),
                             -np.linspace(1.0, 30.0, 5000)])
        envelope = np.exp(-alpha * np.abs(xs) ** a_gs / a_gs)
        # upper certificate |f| <= exp(-alpha |x|^a / a) with C = 1
        assert np.all(f(xs) <= envelope + 1e-300)
        # and the decay order in the log-log sense is exactly a_gs
        xo = np.linspace(8.0, 12.0, 9)
        order = np.polyfit(np.log(xo), np.log(-np.log(f(xo))), 1)[0]
        assert abs(order - a_gs) < 0.05 * a_gs


def test_gs_log_envelope_is_exact():
    f = make_gs(0.7, 3.0)
    xs = np.linspace(-3.0, 3.0, 13)
    assert np.max(np.abs(np.exp(f.log_envelope(xs)) - f(xs))) < 1e-15


def test_gs_parameter_validation():
    with pytest.raises(ConfigError) as err:
        make_gs(0.0, 2.0)
    assert err.value.field == "alpha"
    with pytest.raises(ConfigError) as err:
        make_gs(1.0, 1.0)
    assert err.value.field == "a_gs"


def test_conjugate_exponent_pairs():
    assert conjugate_exponent(2.0) == 2.0
    assert abs(conjugate_exponent(1.5) - 3.0) < 1e-15
    assert abs(conjugate_exponent(3.0) - 1.5) < 1e-15
    # the defining relation 1/a + 1/b = 1
    for a in (1.2, 1.5, 2.0, 4.0):
        assert abs(1 / a + 1 / conjugate_exponent(a) - 1.0) < 1e-15
    with pytest.raises(ConfigError):
        conjugate_exponent(1.0)


# ---------------------------------------------------------------------------
# Gaussian
# ---------------------------------------------------------------------------

def test_gaussian_values():
    assert make_gaussian(1.0)(0.0) == 1.0
    assert abs(make_gaussian(2.0)(2.0) - np.exp(-0.5)) < 1e-15
    f = make_gaussian(1.5, center=2.0)
    assert f(2.0) == 1.0
    with pytest.raises(ConfigError):
        make_gaussian(0.0)


# ---------------------------------------------------------------------------
# Hardy-class rational
# ---------------------------------------------------------------------------

def test_hardy_rational_values_and_pole_guard():
    f = make_hardy_rational(1j)
    assert abs(f(0.0) - 1j) < 1e-15
    assert f.representation == "energy"
    with pytest.raises(PoleInLowerHalfPlane):
        make_hardy_rational(-1j)
    with pytest.raises(PoleInLowerHalfPlane):
        make_hardy_rational(2.0)


def test_hardy_rational_decays_on_lower_arcs():
    f = make_hardy_rational(1j)
    for radius in (10.0, 100.0, 1000.0):
        theta = -np.pi * (np.arange(64) + 0.5) / 64
        zs = radius * np.exp(1j * theta)
        assert np.max(np.abs(f(zs))) <= 1.0 / (radius - 1.0) + 1e-15


# ---------------------------------------------------------------------------
# certificates shared by all families
# ---------------------------------------------------------------------------

def test_decay_certificates_hold_at_many_samples():
    xs = np.linspace(-40.0, 40.0, 10000)
    for f in (make_bump(2.0, 1.0), make_gs(1.0, 1.5), make_gaussian(0.8)):
        vals = np.abs(f(xs))
        env = np.exp(f.log_envelope(xs))
        assert np.all(vals <= env * (1 + 1e-12) + 1e-300)


def test_can_dominate_reflects_the_tail_class():
    for f in (make_bump(1.0), make_gs(1.0, 1.5), make_gaussian(1.0)):
        assert f.can_dominate(0.0) and f.can_dominate(50.0)
    rational = make_hardy_rational(1j)
    assert not rational.can_dominate(0.1)
    with pytest.raises(ValueError):
        rational.can_dominate(-1.0)


def test_truncation_radius_honors_the_rate():
    f = make_gaussian(1.0)
    cut = f.truncation_radius(3.0, np.log(1e-16))
    assert float(f.log_envelope(cut)) + 3.0 * cut <= np.log(1e-16) + 1e-6
    # compact support wins outright
    assert make_bump(1.0, 1.5).truncation_radius(10.0, -100.0) == 2.5
