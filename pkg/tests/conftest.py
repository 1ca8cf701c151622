import numpy as np
import pytest

from kptau.curve import HyperellipticCurve
from kptau.periods import hyperelliptic_periods
from kptau.thetasigma import ThetaContext

BRANCH_CONFIGS = {
    "symmetric": (-2.0, -1.0, 0.0, 1.0, 2.0),
    "skewed": (-3.0, -1.0, 0.5, 2.0, 3.5),
    "spread": (-1.0, 0.0, 0.3, 2.0, 5.0),
}


@pytest.fixture(scope="session")
def genus2_data():
    """name -> (curve, periods, theta context) for the three test curves."""
    out = {}
    for name, bp in BRANCH_CONFIGS.items():
        c = HyperellipticCurve.from_branch_points(bp)
        pd = hyperelliptic_periods(c)
        out[name] = (c, pd, ThetaContext.from_periods(pd))
    return out


@pytest.fixture(scope="session")
def skewed(genus2_data):
    return genus2_data["skewed"]


@pytest.fixture(scope="session")
def genus3_data():
    c = HyperellipticCurve.from_branch_points((-3.0, -2.0, -0.5, 0.5, 1.5, 2.5, 4.0))
    pd = hyperelliptic_periods(c)
    return c, pd, ThetaContext.from_periods(pd)


def random_v(pd, rng):
    return pd.A @ rng.random(pd.g) + pd.B @ rng.random(pd.g)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
