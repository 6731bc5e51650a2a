import numpy as np
import pytest

from radjump import (
    corpus,
    gaussian_profile,
    mixture_profile,
    profile_from_literal,
    tabulated_profile,
)

# the standing two-component example: equal weights, variances (1/2, 3/2),
# unit matched variance in every dimension
WORKHORSE_W = (0.5, 0.5)
WORKHORSE_V = (0.5, 1.5)


@pytest.fixture(scope="session")
def workhorse():
    return mixture_profile(2, WORKHORSE_W, WORKHORSE_V)


@pytest.fixture(scope="session")
def workhorse3():
    return mixture_profile(3, WORKHORSE_W, WORKHORSE_V)


@pytest.fixture(scope="session")
def std_gaussian2():
    return gaussian_profile(2, 1.0)


@pytest.fixture(scope="session")
def corpus_entries():
    return corpus(seed=0)


@pytest.fixture(scope="session")
def corpus_profiles(corpus_entries):
    return [(e["name"], profile_from_literal(e["profile"])) for e in corpus_entries]


@pytest.fixture(scope="session")
def corpus_mixtures(corpus_profiles):
    return [(n, p) for n, p in corpus_profiles if p.is_analytic]


def gaussian_table(d: int, variance: float = 1.0, n: int = 1201, r_max: float = None):
    """Tabulated copy of a centered Gaussian, for interpolation-path tests."""
    if r_max is None:
        r_max = float(np.sqrt(variance)) * {2: 7.7, 3: 7.9, 5: 8.4, 8: 8.9}.get(d, 10.0)
    r = np.linspace(0.0, r_max, n)
    phi = np.exp(-r * r / (2.0 * variance)) / (2.0 * np.pi * variance) ** (0.5 * d)
    return tabulated_profile(d, r, phi)


@pytest.fixture(scope="session")
def gaussian_tab2():
    return gaussian_table(2, 1.0)
