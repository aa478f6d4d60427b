"""Test-function families with certified decay classes.

Four families feed the transforms and the growth analysis:

* ``bump``           -- compactly supported C-infinity bump.
* ``gs``             -- super-exponential decay exp(-alpha (1+x^2)^(a/2) / a),
                        the smooth stand-in for exp(-alpha |x|^a / a).
* ``gaussian``       -- plain Gaussian, the exact-Fourier reference case.
* ``hardy_rational`` -- energy-representation 1/(E - z0) with its single pole
                        in the upper half-plane.

Every instance carries a decay certificate.  ``can_dominate(rate)`` answers
whether exp(rate*x) |f(x)| is integrable along a tail, and
``truncation_radius`` converts the certificate into a concrete quadrature
cut-off with a guaranteed envelope value at the cut.  The first three
families are position-space functions; ``hardy_rational`` lives in the
energy representation and its polynomial decay certificate dominates no
positive rate.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, PoleInLowerHalfPlane

__all__ = [
    "TestFunction",
    "make_bump",
    "make_gs",
    "make_gaussian",
    "make_hardy_rational",
    "conjugate_exponent",
]


def conjugate_exponent(a_gs: float) -> float:
    """Return b_gs with 1/a_gs + 1/b_gs = 1; requires a_gs > 1."""
    if a_gs <= 1.0:
        raise ConfigError("a_gs", f"conjugate exponent needs a_gs > 1, got {a_gs}")
    return a_gs / (a_gs - 1.0)


@dataclass(frozen=True)
class TestFunction:
    """One member of a decay-certified function family.

    Parameters
    ----------
    family : str
        One of "bump", "gs", "gaussian", "hardy_rational".
    params : dict
        Family parameters (A/center, alpha/a_gs, sigma/center, z0).
    domain : str
        "half" (the function is used on [0, inf)) or "full".
    representation : str
        "position" or "energy".
    evaluator : callable
        Vectorized map from the argument to the function value.
    """

    family: str
    params: dict
    domain: str
    representation: str
    evaluator: object = field(repr=False)

    def __call__(self, x):
        return self.evaluator(x)

    @property
    def support(self):
        """(lo, hi) for compactly supported families, else None."""
        if self.family == "bump":
            c, half = self.params["center"], self.params["A"]
            return (c - half, c + half)
        return None

    # -- decay certificate ------------------------------------------------

    def log_envelope(self, x):
        """Certified log |f(x)| at real x (exact for these families).

        Returns -inf outside a compact support.  Vectorized.
        """
        x = np.asarray(x, dtype=float)
        if self.family == "bump":
            u = (x - self.params["center"]) / self.params["A"]
            out = np.full(u.shape, -np.inf)
            inside = np.abs(u) < 1.0
            with np.errstate(divide="ignore"):
                out[inside] = -1.0 / (1.0 - u[inside] ** 2)
            return out
        if self.family == "gs":
            alpha, a = self.params["alpha"], self.params["a_gs"]
            return -alpha * (1.0 + x**2) ** (a / 2.0) / a
        if self.family == "gaussian":
            sigma, c = self.params["sigma"], self.params["center"]
            return -((x - c) ** 2) / (2.0 * sigma**2)
        z0 = self.params["z0"]
        return -0.5 * np.log((x - z0.real) ** 2 + z0.imag**2)

    def can_dominate(self, rate: float) -> bool:
        """Whether exp(rate*x) |f(x)| is certifiably integrable, rate >= 0.

        Compact, Gaussian and super-exponential (a_gs > 1) tails dominate
        every finite rate; the rational family's polynomial decay dominates
        none (its |f| is not even absolutely integrable on the line).
        """
        if rate < 0.0:
            raise ValueError(f"rate must be >= 0, got {rate}")
        return self.family in ("bump", "gs", "gaussian")

    def peak_radius(self, rate: float, direction: int = 1) -> float:
        """Stationary point t >= 0 of log|f(direction*t)| + rate*t.

        Hint for quadrature panel placement; ``direction`` is +1 for the
        right tail, -1 for the left.
        """
        if self.family == "bump":
            return max(direction * self.params["center"], 0.0)
        if self.family == "gaussian":
            sigma, c = self.params["sigma"], self.params["center"]
            return max(direction * c + rate * sigma**2, 0.0)
        if self.family == "gs":
            # alpha t (1+t^2)^(a/2-1) = rate, LHS strictly increasing in t
            alpha, a = self.params["alpha"], self.params["a_gs"]
            lhs = lambda t: alpha * t * (1.0 + t * t) ** (a / 2.0 - 1.0)
            if rate <= 0.0:
                return 0.0
            hi = 1.0
            while lhs(hi) < rate:
                hi *= 2.0
            lo = 0.0
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if lhs(mid) < rate:
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        raise ValueError(f"no peak certificate for family {self.family!r}")

    def truncation_radius(self, rate: float, log_tiny: float, direction: int = 1) -> float:
        """Smallest t past the peak with log|f(direction*t)| + rate*t <= log_tiny.

        Exact support edge for bumps.  Requires ``can_dominate(rate)``.
        """
        if not self.can_dominate(rate):
            raise ValueError(
                f"family {self.family!r} has no tail certificate against rate {rate}"
            )
        if self.family == "bump":
            c, half = self.params["center"], self.params["A"]
            return direction * c + half
        g = lambda t: float(self.log_envelope(direction * t)) + rate * t
        lo = self.peak_radius(rate, direction)
        hi = max(lo, 1.0)
        while g(hi) > log_tiny:
            hi *= 2.0
            if hi > 1e12:  # certificate guarantees this is unreachable
                raise RuntimeError("tail solve runaway")
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if g(mid) > log_tiny:
                lo = mid
            else:
                hi = mid
        return hi


def make_bump(A: float, center: float = 0.0, domain: str | None = None) -> TestFunction:
    """C-infinity bump exp(-1/(1-u^2)), u = (x-center)/A, zero for |u| >= 1.

    ``domain`` defaults to "half" when the support lies in [0, inf),
    otherwise "full".  The evaluator accepts real arguments only; the
    support test has no single-valued complex extension.
    """
    if A <= 0.0:
        raise ConfigError("A", f"support half-width must be positive, got {A}")
    a_width = float(A)
    c = float(center)
    if domain is None:
        domain = "half" if c - a_width >= 0.0 else "full"
    _check_domain(domain)

    def f(x):
        if np.iscomplexobj(x):
            raise ValueError("bump functions accept real arguments only")
        x = np.asarray(x, dtype=float)
        u = (x - c) / a_width
        out = np.zeros(u.shape)
        inside = np.abs(u) < 1.0
        with np.errstate(divide="ignore"):
            out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
        return out if out.ndim else float(out)

    return TestFunction(
        "bump", {"A": a_width, "center": c}, domain, "position", f
    )


def make_gs(alpha: float, a_gs: float, domain: str = "full") -> TestFunction:
    """Smooth super-exponential decay exp(-alpha (1+x^2)^(a_gs/2) / a_gs).

    Decays like exp(-alpha |x|^a_gs / a_gs); the (1+x^2) form keeps the
    function C-infinity at the origin.  Requires alpha > 0 and a_gs > 1.
    """
    if alpha <= 0.0:
        raise ConfigError("alpha", f"decay scale must be positive, got {alpha}")
    if a_gs <= 1.0:
        raise ConfigError("a_gs", f"decay order must exceed 1, got {a_gs}")
    _check_domain(domain)
    al, a = float(alpha), float(a_gs)

    def f(x):
        x = np.asarray(x)
        return np.exp(-al * (1.0 + x * x) ** (a / 2.0) / a)

    return TestFunction("gs", {"alpha": al, "a_gs": a}, domain, "position", f)


def make_gaussian(sigma: float, center: float = 0.0, domain: str = "full") -> TestFunction:
    """Gaussian exp(-(x-center)^2 / (2 sigma^2)); the exact-Fourier reference."""
    if sigma <= 0.0:
        raise ConfigError("sigma", f"width must be positive, got {sigma}")
    _check_domain(domain)
    s, c = float(sigma), float(center)

    def f(x):
        x = np.asarray(x)
        return np.exp(-((x - c) ** 2) / (2.0 * s * s))

    return TestFunction("gaussian", {"sigma": s, "center": c}, domain, "position", f)


def make_hardy_rational(z0: complex) -> TestFunction:
    """Energy-representation function E -> 1/(E - z0) with Im z0 > 0.

    Analytic and decaying in the closed lower half-plane, so Hardy class
    from below by construction.  Raises PoleInLowerHalfPlane for
    Im z0 <= 0.
    """
    z0 = complex(z0)
    if z0.imag <= 0.0:
        raise PoleInLowerHalfPlane(
            f"hardy_rational requires Im z0 > 0, got z0 = {z0!r}"
        )

    def f(e):
        e = np.asarray(e)
        return 1.0 / (e - z0)

    return TestFunction("hardy_rational", {"z0": z0}, "full", "energy", f)


def _check_domain(domain: str) -> None:
    if domain not in ("half", "full"):
        raise ConfigError("domain", f"domain must be 'half' or 'full', got {domain!r}")
