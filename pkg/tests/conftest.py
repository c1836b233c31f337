import numpy as np
import pytest

import skewbs as sk
from skewbs.inference import kbj_mle


@pytest.fixture(scope="session")
def volle():
    return sk.volle_sample()


@pytest.fixture(scope="session")
def volle_mle(volle):
    return sk.mle(volle)


@pytest.fixture(scope="session")
def volle_restricted(volle):
    return sk.mle(volle, fix_lambda=0.0)


@pytest.fixture(scope="session")
def volle_kbj(volle):
    return kbj_mle(volle)


@pytest.fixture(scope="session")
def synthetic_sample():
    """A moderate synthetic bivariate sample with known truth."""
    truth = sk.SmvbsParams((0.5, 0.5), (1.0, 1.0), 1.5)
    rng = np.random.default_rng(314159)
    data = sk.smvbs_sample(4000, truth, rng)
    return truth, sk.SampleMatrix(data)
