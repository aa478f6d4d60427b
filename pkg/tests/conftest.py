"""Shared fixtures: the reference shell potential and its resonances.

The three lower-half-plane momenta frozen here were produced by the
recursive argument-principle bisection oracle (boxes refined to side
5e-9); the full oracle run is repeated in the acceptance suite.
"""

import numpy as np
import pytest

from hardylab.resonances import find_resonances
from hardylab.scattering import ShellPotential

SEARCH_RECT = (0.05, 6.0, -2.0, -0.005)

# bisection-oracle momenta for ShellPotential(1, 2, 10) in SEARCH_RECT
KN_FROZEN = (
    2.31909985020527 - 0.00930310548097j,
    3.992510714007581 - 0.2591498651188528j,
    5.117149880683746 - 0.4540089255699245j,
)


@pytest.fixture(scope="session")
def shell10():
    return ShellPotential(1.0, 2.0, 10.0)


@pytest.fixture(scope="session")
def shell_resonances(shell10):
    """Newton-refined resonances of the reference shell, found once."""
    found = find_resonances(shell10, SEARCH_RECT, tol=1e-10)
    assert len(found) == len(KN_FROZEN)
    for res, kn in zip(found, KN_FROZEN):
        assert abs(res.point.k - kn) < 1e-9
    return found


def assert_close(lhs, rhs, tol, label=""):
    err = np.max(np.abs(np.asarray(lhs) - np.asarray(rhs)))
    assert err < tol, f"{label} off by {err:.3e} (tol {tol:.1e})"
