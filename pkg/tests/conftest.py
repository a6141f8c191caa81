import numpy as np
import pytest

from carmahf import CarmaModel


@pytest.fixture
def ou():
    return CarmaModel([1.0], [1.0])


@pytest.fixture
def carma20():
    return CarmaModel([3.0, 2.0], [1.0])


@pytest.fixture
def carma21():
    # Corpus model from the acceptance suite; a and b share the zero -1, which
    # is harmless for every second-order quantity computed here.
    return CarmaModel([3.0, 2.0], [1.0, 1.0])


@pytest.fixture
def carma30():
    return CarmaModel([6.0, 11.0, 6.0], [1.0])  # roots -1, -2, -3


def corpus():
    return [
        CarmaModel([3.0, 2.0], [1.0, 1.0]),
        CarmaModel([3.0, 2.0], [1.0]),
        CarmaModel([6.0, 11.0, 6.0], [1.0]),
    ]


@pytest.fixture(autouse=True)
def _quiet_coarse_warnings():
    import warnings

    from carmahf.sampling import CoarseSamplingWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CoarseSamplingWarning)
        yield


def random_stable_model(rng, p_max=4):
    p = int(rng.integers(1, p_max + 1))
    roots = []
    while len(roots) < p:
        if p - len(roots) >= 2 and rng.random() < 0.5:
            re = -rng.uniform(0.3, 3.0)
            im = rng.uniform(0.3, 3.0)
            roots += [complex(re, im), complex(re, -im)]
        else:
            roots.append(complex(-rng.uniform(0.3, 3.0), 0.0))
    a_poly = np.real(np.poly(np.array(roots)))  # descending, monic
    a = a_poly[1:]
    q = int(rng.integers(0, p))
    b = np.concatenate([rng.uniform(-1.0, 1.0, q), [1.0]])
    return CarmaModel(a, b, sigma2=float(rng.uniform(0.5, 2.0)))
