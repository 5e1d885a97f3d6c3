"""
Unit tests for the shared pydantic models.
"""

import json

import pytest
from pydantic import ValidationError

from src.models.models import (
    BroadcastMessage,
    CertificateMode,
    EngelCertificate,
    EngelVerdict,
    PlatformDescriptor,
    PlatformFamily,
    ProtocolKind,
    Transcript,
    broadcast_base_indices,
    public_base_count,
)


class TestPlatformDescriptor:
    """Tests for parsing and validating platform descriptors."""

    def test_parse_unitriangular(self):
        descriptor = PlatformDescriptor.parse("ut:4:101")

        assert descriptor.family is PlatformFamily.UNITRIANGULAR
        assert descriptor.params == (4, 101)
        assert descriptor.claimed_class == 3
        assert descriptor.claimed_not_engel is None
        assert descriptor.characteristic == 101
        assert descriptor.spec == "ut:4:101"

    def test_parse_wreath(self):
        descriptor = PlatformDescriptor.parse(" WREATH:5 ")

        assert descriptor.family is PlatformFamily.WREATH
        assert descriptor.claimed_class == 5
        assert descriptor.claimed_not_engel == 4
        assert descriptor.characteristic == 5
        assert descriptor.spec == "wreath:5"

    @pytest.mark.parametrize("spec", ["ut:4", "heisenberg:3", "ut:a:5", "", "wreath:3:3"])
    def test_parse_rejects_syntax(self, spec):
        with pytest.raises(ValueError, match="Invalid platform spec"):
            PlatformDescriptor.parse(spec)

    @pytest.mark.parametrize("spec", ["ut:1:5", "ut:3:4", "ut:3:1", "wreath:4", "wreath:257"])
    def test_parse_rejects_params(self, spec):
        with pytest.raises(ValueError):
            PlatformDescriptor.parse(spec)

    def test_wrong_class_claim(self):
        with pytest.raises(ValidationError, match="class"):
            PlatformDescriptor(family="unitriangular", params=(4, 5), claimed_class=2)

    def test_ut_cannot_claim_not_class_engel(self):
        with pytest.raises(ValidationError, match="Engel"):
            PlatformDescriptor(family="unitriangular", params=(4, 5), claimed_not_engel=3)

    def test_param_too_large(self):
        with pytest.raises(ValidationError, match="u32"):
            PlatformDescriptor.unitriangular(3, 2**32 + 15)

    def test_equal_and_hashable(self):
        assert PlatformDescriptor.parse("ut:3:5") == PlatformDescriptor.unitriangular(3, 5)
        assert len({PlatformDescriptor.wreath(3), PlatformDescriptor.parse("wreath:3")}) == 1


class TestEngelCertificate:
    """Tests for EngelCertificate validation."""

    def test_not_engel_needs_pair(self):
        with pytest.raises(ValidationError, match="witness pair"):
            EngelCertificate(
                platform=PlatformDescriptor.wreath(3), k=2,
                verdict=EngelVerdict.NOT_K_ENGEL, mode=CertificateMode.SAMPLED,
            )

    def test_k_positive(self):
        with pytest.raises(ValidationError):
            EngelCertificate(
                platform=PlatformDescriptor.wreath(3), k=0,
                verdict=EngelVerdict.IS_K_ENGEL, mode=CertificateMode.EXHAUSTIVE,
            )

    def test_witness_from_hex(self):
        cert = EngelCertificate(
            platform=PlatformDescriptor.wreath(3), k=2, verdict=EngelVerdict.NOT_K_ENGEL,
            witness=["01000000", "00000001"], mode=CertificateMode.SAMPLED,
        )
        assert cert.witness == [bytes([1, 0, 0, 0]), bytes([0, 0, 0, 1])]
        assert json.loads(cert.model_dump_json())["witness"] == ["01000000", "00000001"]


class TestTranscript:
    """Tests for Transcript and BroadcastMessage."""

    def test_users_and_lookup(self):
        message = BroadcastMessage(sender=2, payload=[(2, "0001")])
        transcript = Transcript(
            protocol=ProtocolKind.II,
            platform=PlatformDescriptor.unitriangular(2, 5),
            n=1,
            bases=["01", "02"],
            messages=[message],
        )

        assert transcript.users == 2
        assert transcript.message_from(2) is message
        assert transcript.message_from(1) is None
        assert message.elements() == [bytes([0, 1])]

    def test_sender_is_one_based(self):
        with pytest.raises(ValidationError):
            BroadcastMessage(sender=0, payload=[])

    def test_bad_hex(self):
        with pytest.raises(ValidationError, match="hex"):
            BroadcastMessage(sender=1, payload=[(1, "xyz")])


class TestBaseIndices:
    """Tests for which bases a broadcast message carries."""

    def test_protocol1(self):
        assert broadcast_base_indices(ProtocolKind.I, 3) == [1, 2, 3]
        assert public_base_count(ProtocolKind.I, 3) == 3

    def test_protocol2(self):
        assert broadcast_base_indices(ProtocolKind.II, 4) == [2]
        assert public_base_count(ProtocolKind.II, 4) == 2
