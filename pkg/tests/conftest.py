import numpy as np
import pytest

from mixquant import make_mixed_uniform, preset_measure


@pytest.fixture(scope="session")
def fifth():
    return preset_measure("connected-p", 0.2)


@pytest.fixture(scope="session")
def third():
    return preset_measure("connected-p", 1.0 / 3.0)


@pytest.fixture(scope="session")
def hundredth():
    return preset_measure("gapped-thirds-p", 0.01)


@pytest.fixture(scope="session")
def two_fifths():
    return preset_measure("gapped-thirds-p", 0.4)


@pytest.fixture(scope="session")
def thousandth():
    return preset_measure("gapped-thirds-p", 0.001)


@pytest.fixture(scope="session")
def sevenths_51():
    return preset_measure("gapped-sevenths-p", 0.102)


@pytest.fixture(scope="session")
def sevenths_225():
    return preset_measure("gapped-sevenths-p", 0.45)


@pytest.fixture(scope="session")
def paper_presets(fifth, third, hundredth, two_fifths, thousandth, sevenths_51, sevenths_225):
    return {
        "connected 1/5": fifth,
        "connected 1/3": third,
        "thirds 1/100": hundredth,
        "thirds 2/5": two_fifths,
        "thirds 1/1000": thousandth,
        "sevenths 51/500": sevenths_51,
        "sevenths 225/500": sevenths_225,
    }


def random_two_piece(rng: np.random.Generator, gapped: bool = True):
    """Random valid two-piece measure with weights away from the extremes."""
    l1 = rng.uniform(0.2, 1.5)
    l2 = rng.uniform(0.2, 1.5)
    gap = rng.uniform(0.05, 1.0) if gapped else 0.0
    lo = rng.uniform(-2.0, 2.0)
    p = rng.uniform(0.05, 0.95)
    return make_mixed_uniform(
        [(lo, lo + l1, p), (lo + l1 + gap, lo + l1 + gap + l2, 1.0 - p)]
    )
