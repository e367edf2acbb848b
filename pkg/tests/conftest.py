import pytest

import bop2dc as b


@pytest.fixture(scope="session")
def binary_plan():
    """Single-arm binary plan: N=40, interims at 10/20/30."""
    return b.TrialPlan(endpoint=b.binary_endpoint(), max_n=40, interim_looks=(10, 20, 30))


@pytest.fixture(scope="session")
def binary_profile():
    return b.TargetProfile.single(theta_lrv=0.2, theta_cmv=0.3, theta_futile=0.2, theta_eff=0.4)


@pytest.fixture(scope="session")
def binary_prior():
    return b.BinaryPrior()


@pytest.fixture(scope="session")
def sample_design():
    return b.DesignParams(lam_lrv=0.93, lam_cmv=0.14, gam_lrv=0.0, gam_cmv=0.8)


@pytest.fixture(scope="session")
def futile_scenario():
    return b.Scenario("futile", b.BinaryTruth(0.2))


@pytest.fixture(scope="session")
def effective_scenario():
    return b.Scenario("effective", b.BinaryTruth(0.4))
