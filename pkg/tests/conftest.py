import numpy as np
import pytest

from sigma2 import elliptic as el
from sigma2 import sigma as sg


@pytest.fixture(scope="session")
def ec_generic():
    """A generic complex genus-1 context."""
    return el.make_context((0.4 - 0.2j, 0.5 + 0.3j))


@pytest.fixture(scope="session")
def ctx_generic():
    """A generic one-double-point context (wp'(alpha) far from 0)."""
    return sg.context_lambda1(0.2 + 0.1j, (0.4 - 0.2j, 0.5 + 0.3j))


@pytest.fixture(scope="session")
def ctx_gap():
    """Real rectangular lattice with the double point in the spectral gap."""
    ec = el.make_context((-1.2, 0.1))
    roots = sorted(r.real for r in ec.roots)
    wpa = 0.5 * (roots[1] + roots[2])
    return sg.context_lambda1(0.6 * wpa, (-1.2, 0.1))


@pytest.fixture(scope="session")
def ctx_two_points():
    """A generic two-double-point context."""
    return sg.context_lambda0(0.7 - 0.2j, 0.15 + 0.4j)


@pytest.fixture()
def rng():
    return np.random.default_rng(42)
