"""
Test fixtures for platform group tests.

Small platforms are used so exhaustive checks stay fast.
"""

import random

import pytest

from src.models.models import PlatformDescriptor
from src.service.groups.platform import build_platform


@pytest.fixture
def rng():
    """Fixture providing a seeded random generator."""
    return random.Random(20240601)


@pytest.fixture
def ut35():
    """UT(3, 5): class 2, order 125."""
    return build_platform(PlatformDescriptor.unitriangular(3, 5))


@pytest.fixture
def ut47():
    return build_platform(PlatformDescriptor.unitriangular(4, 7))


@pytest.fixture
def ut4_101():
    return build_platform(PlatformDescriptor.unitriangular(4, 101))


@pytest.fixture
def ut5_101():
    return build_platform(PlatformDescriptor.unitriangular(5, 101))


@pytest.fixture
def ut3_large():
    """UT(3, q) with a 31-bit prime: four-byte entries."""
    return build_platform(PlatformDescriptor.unitriangular(3, 2147483647))


@pytest.fixture
def wreath3():
    """Z_3 wr Z_3: class 3, order 81."""
    return build_platform(PlatformDescriptor.wreath(3))


@pytest.fixture(params=["ut:3:5", "ut:4:7", "ut:4:101", "ut:5:101", "wreath:3", "wreath:5"])
def any_platform(request):
    """Fixture parametrized over every shipped test platform."""
    return build_platform(PlatformDescriptor.parse(request.param))


@pytest.fixture
def wreath2():
    """Z_2 wr Z_2: class 2, order 8 (the dihedral group of order 8)."""
    return build_platform(PlatformDescriptor.wreath(2))


@pytest.fixture(params=["wreath:2", "wreath:3", "ut:3:2", "ut:3:3"])
def tiny_platform(request):
    """Platforms small enough for exhaustive certification."""
    return build_platform(PlatformDescriptor.parse(request.param))
