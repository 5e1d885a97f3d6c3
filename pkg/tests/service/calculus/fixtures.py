"""
Test fixtures for commutator calculus tests.

Includes a deliberately broken platform: its product appends the central
element I + E13, so the commutator identities must fail on it.
"""

import pytest

from src.models.models import PlatformDescriptor
from src.service.groups.platform import build_platform
from src.service.groups.unitriangular import UnitriangularGroup


class FaultyUnitriangularGroup(UnitriangularGroup):
    """UT(3, q) whose product is a * b * (I + E13)."""

    def _multiply(self, a, b):
        return super()._multiply(super()._multiply(a, b), self.elementary(1, 3))


@pytest.fixture
def faulty_ut35():
    """Fault-injected UT(3, 5); not a group, must be caught by the identity suite."""
    return FaultyUnitriangularGroup(PlatformDescriptor.unitriangular(3, 5))


@pytest.fixture
def ut2_5():
    """UT(2, 5): abelian (class 1)."""
    return build_platform(PlatformDescriptor.unitriangular(2, 5))


@pytest.fixture
def ut45():
    return build_platform(PlatformDescriptor.unitriangular(4, 5))


@pytest.fixture(params=["ut:3:5", "ut:4:7", "ut:4:101", "ut:5:101", "wreath:3"])
def suite_platform(request):
    """The platforms the identity suite must pass on."""
    return build_platform(PlatformDescriptor.parse(request.param))
