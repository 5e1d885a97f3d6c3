"""
Test fixtures for cryptanalysis tests.
"""

import pytest

from src.models.models import PlatformDescriptor, ProtocolKind
from src.service.calculus.certification import certify_class
from src.service.groups.platform import build_platform
from src.service.protocols.runner import run_session
from src.service.protocols.session import SessionParams, select_public_bases

BIG_PRIME = 2147483647


def seeded_session(spec: str, protocol: ProtocolKind, seed: int, exponents=None):
    """Run a seeded session; returns (transcript, keys, params)."""
    group = build_platform(PlatformDescriptor.parse(spec))
    cert = certify_class(group, samples=20, seed=0)
    n = cert.class_upper if protocol is ProtocolKind.I else cert.class_upper - 1
    params = SessionParams(
        protocol=protocol,
        platform=group.descriptor,
        n=n,
        bases=select_public_bases(group, protocol, n, seed=seed),
        rng_seed=seed,
        exponents=exponents,
        class_certificate=cert,
    )
    transcript, keys = run_session(params)
    return transcript, keys, params


@pytest.fixture
def ut4_101_session():
    """Seeded Protocol I session on UT(4, 101)."""
    return seeded_session("ut:4:101", ProtocolKind.I, seed=1)


@pytest.fixture
def ut5_101_session():
    """Seeded Protocol II session on UT(5, 101)."""
    return seeded_session("ut:5:101", ProtocolKind.II, seed=1)


@pytest.fixture
def wreath_session():
    return seeded_session("wreath:3", ProtocolKind.II, seed=1)


@pytest.fixture
def ut3_101():
    return build_platform(PlatformDescriptor.unitriangular(3, 101))


@pytest.fixture
def ut3_big():
    return build_platform(PlatformDescriptor.unitriangular(3, BIG_PRIME))
