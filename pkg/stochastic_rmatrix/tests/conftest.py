"""
Shared fixtures for the stochastic R-matrix tests
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project directory to path
sys.path.append(str(Path(__file__).parent.parent))

from src.exactnum import Budget


@pytest.fixture
def quick():
    """One random point per identity."""
    return Budget(points=1, seed=11)


@pytest.fixture
def thorough():
    return Budget(points=3, seed=20240)


@pytest.fixture
def perturbed():
    """Negative control: one entry of the left-hand side is shifted."""
    return Budget(points=1, seed=11, perturb=True)


@pytest.fixture
def point():
    return {"q": Fraction(2), "nu": Fraction(1, 3), "u": Fraction(9), "w": Fraction(4)}
