"""
Test fixtures for mapper tests.

This module provides reusable transcripts for testing the transcript mapper.
"""

import pytest

from src.models.models import BroadcastMessage, PlatformDescriptor, ProtocolKind, Transcript


@pytest.fixture
def ut35_transcript():
    """Protocol I on UT(3, 5), bases (I + E12, I + E23), exponents (2, 3, 4)."""
    return Transcript(
        protocol=ProtocolKind.I,
        platform=PlatformDescriptor.unitriangular(3, 5),
        n=2,
        bases=[bytes([1, 0, 0]), bytes([0, 0, 1])],
        messages=[
            BroadcastMessage(sender=a - 1, payload=[(1, bytes([a, 0, 0])), (2, bytes([0, 0, a]))])
            for a in (2, 3, 4)
        ],
    )


@pytest.fixture
def ut35_wire():
    """Wire bytes of ut35_transcript, written out by hand."""
    return bytes.fromhex(
        "4e4b4558" "01" "01"            # magic, version, protocol I
        "01" "00000003" "00000005"      # UT(3, 5)
        "0002"                          # n
        "010000" "000001"               # bases
        "0001" "0002" "020000" "000002"
        "0002" "0002" "030000" "000003"
        "0003" "0002" "040000" "000004"
    )


@pytest.fixture
def wreath_transcript():
    """Protocol II on Z_3 wr Z_3 with n = 2: one element per message."""
    return Transcript(
        protocol=ProtocolKind.II,
        platform=PlatformDescriptor.wreath(3),
        n=2,
        bases=[bytes([1, 0, 0, 0]), bytes([0, 0, 0, 1])],
        messages=[BroadcastMessage(sender=j, payload=[(2, bytes([0, 0, 0, 1 + j % 2]))]) for j in (1, 2, 3)],
    )
