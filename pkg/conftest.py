"""Shared fixtures for the toolkit tests"""

import math

import pytest

from backend.numerics import Numerics
from backend.verifier.checks import Verifier


def q0_closed(x: float) -> float:
    """Q_0(x) = ½ ln((x+1)/(x-1))"""
    return 0.5 * math.log((x + 1.0) / (x - 1.0))


def q1_closed(x: float) -> float:
    """Q_1(x) = x·Q_0(x) - 1"""
    return x * q0_closed(x) - 1.0


@pytest.fixture
def fast_numerics() -> Numerics:
    return Numerics(grid_points=2000)


@pytest.fixture(scope="module")
def verifier() -> Verifier:
    return Verifier()
