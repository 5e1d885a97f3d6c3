"""
Test fixtures for protocol tests.

Certificates are computed once per module; sessions are built through the
`make_params` factory so each test states its protocol, bases and exponents.
"""

import pytest

from src.models.models import PlatformDescriptor, ProtocolKind
from src.service.calculus.certification import certify_class, find_nondegenerate_witness
from src.service.groups.platform import build_platform
from src.service.protocols.session import SessionParams, round_broadcast, select_public_bases


def certified(spec: str):
    group = build_platform(PlatformDescriptor.parse(spec))
    exhaustive = group.order <= 4096
    return group, certify_class(group, exhaustive=exhaustive, samples=50, seed=0)


@pytest.fixture(scope="module")
def certified_platforms():
    """(group, class certificate) per platform spec, computed lazily."""
    cache = {}

    def get(spec: str):
        if spec not in cache:
            cache[spec] = certified(spec)
        return cache[spec]

    return get


@pytest.fixture
def make_params(certified_platforms):
    """Factory: SessionParams on a certified platform."""

    def build(spec, protocol=ProtocolKind.I, bases=None, exponents=None, seed=0, n=None):
        group, cert = certified_platforms(spec)
        if n is None:
            n = cert.class_upper if protocol is ProtocolKind.I else cert.class_upper - 1
        if bases is None:
            bases = select_public_bases(group, protocol, n, seed=seed)
        return SessionParams(
            protocol=protocol,
            platform=group.descriptor,
            n=n,
            bases=tuple(bases),
            rng_seed=seed,
            exponents=tuple(exponents) if exponents is not None else None,
            class_certificate=cert,
        )

    return build


@pytest.fixture
def ut35_protocol1(make_params):
    """Protocol I on UT(3, 5), bases (I + E12, I + E23), exponents (2, 3, 4)."""
    group = build_platform(PlatformDescriptor.unitriangular(3, 5))
    return make_params("ut:3:5", bases=(group.elementary(1, 2), group.elementary(2, 3)), exponents=(2, 3, 4))


@pytest.fixture
def wreath3_protocol2(make_params):
    """Protocol II on Z_3 wr Z_3 with n = 2 and an exhaustively found witness."""
    group = build_platform(PlatformDescriptor.wreath(3))
    return make_params("wreath:3", protocol=ProtocolKind.II, bases=find_nondegenerate_witness(group, 3))


def full_transcript(params, states):
    """Header plus every user's broadcast."""
    return params.header().model_copy(update={"messages": [round_broadcast(s) for s in states]})
