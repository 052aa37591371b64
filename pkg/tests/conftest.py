import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from diametral.spaces import C01PL, FiniteDim, L1Step, PLFunction  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def c01():
    return C01PL()


@pytest.fixture
def l1step():
    return L1Step()


@pytest.fixture
def l2():
    return FiniteDim(2, 2)


@pytest.fixture
def one():
    return PLFunction.constant(Fraction(1))


F = Fraction
