"""
Mapper between Transcript models and their byte-exact wire form / JSON.

Wire format (all integers big-endian):

    magic "NKEX" | version u8 | protocol tag u8 | platform header | n u16
    | base elements (canonical encoding)
    | per sender, ascending: sender u16 | element count u16 | elements
"""

import hashlib
import logging
import struct

from pydantic import ValidationError

from src.constants import (
    MAX_WIRE_COUNT,
    PROTOCOL_TAG_I,
    PROTOCOL_TAG_II,
    TRANSCRIPT_MAGIC,
    TRANSCRIPT_VERSION,
)
from src.models.models import (
    BroadcastMessage,
    ProtocolKind,
    Transcript,
    broadcast_base_indices,
    public_base_count,
)
from src.service.groups.base import ElementDecodeError, PlatformGroup
from src.service.groups.platform import (
    build_platform,
    decode_platform_header,
    element_size_for,
    encode_platform_header,
)

logger = logging.getLogger(__name__)

PROTOCOL_TAGS = {ProtocolKind.I: PROTOCOL_TAG_I, ProtocolKind.II: PROTOCOL_TAG_II}
TAG_PROTOCOLS = {tag: protocol for protocol, tag in PROTOCOL_TAGS.items()}


class TranscriptDecodeError(Exception):
    """Raised when transcript bytes or JSON cannot be decoded."""
    pass


class _Reader:
    """Cursor over wire bytes; every short read is a decode error."""

    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, size: int, what: str) -> bytes:
        end = self.offset + size
        if end > len(self.data):
            raise TranscriptDecodeError(f"truncated transcript while reading {what}")
        chunk = self.data[self.offset:end]
        self.offset = end
        return chunk

    def u8(self, what: str) -> int:
        return self.take(1, what)[0]

    def u16(self, what: str) -> int:
        return struct.unpack(">H", self.take(2, what))[0]

    def element(self, group: PlatformGroup, what: str) -> bytes:
        raw = self.take(group.element_size, what)
        try:
            group.deserialize(raw)
        except ElementDecodeError as e:
            raise TranscriptDecodeError(f"invalid {what}: {e}") from e
        return raw

    @property
    def exhausted(self) -> bool:
        return self.offset == len(self.data)


class TranscriptMapper:
    """Maps transcripts to wire bytes and JSON documents."""

    @staticmethod
    def to_wire(transcript: Transcript) -> bytes:
        """
        Encode a transcript; messages are written in ascending sender order.

        Raises:
            ValueError: Element sizes or counts that the format cannot carry
        """
        group = build_platform(transcript.platform)
        size = group.element_size
        if transcript.n > MAX_WIRE_COUNT:
            raise ValueError(f"n={transcript.n} does not fit in u16")

        parts = [
            TRANSCRIPT_MAGIC,
            bytes([TRANSCRIPT_VERSION, PROTOCOL_TAGS[transcript.protocol]]),
            encode_platform_header(transcript.platform),
            struct.pack(">H", transcript.n),
        ]
        for base in transcript.bases:
            if len(base) != size:
                raise ValueError(f"base element has {len(base)} bytes, expected {size}")
            parts.append(bytes(base))

        for message in sorted(transcript.messages, key=lambda m: m.sender):
            elements = message.elements()
            if message.sender > MAX_WIRE_COUNT or len(elements) > MAX_WIRE_COUNT:
                raise ValueError(f"message from user {message.sender} does not fit the u16 fields")
            parts.append(struct.pack(">HH", message.sender, len(elements)))
            for element in elements:
                if len(element) != size:
                    raise ValueError(f"user {message.sender}: element has {len(element)} bytes, expected {size}")
                parts.append(bytes(element))

        return b"".join(parts)

    @staticmethod
    def from_wire(data: bytes) -> Transcript:
        """
        Decode wire bytes into a Transcript, validating every element.

        Raises:
            TranscriptDecodeError: Bad magic/version/tag, truncation, trailing
                bytes or element bytes outside the platform
        """
        reader = _Reader(bytes(data))
        if reader.take(len(TRANSCRIPT_MAGIC), "magic") != TRANSCRIPT_MAGIC:
            raise TranscriptDecodeError("not a transcript: bad magic")
        version = reader.u8("version")
        if version != TRANSCRIPT_VERSION:
            raise TranscriptDecodeError(f"unsupported transcript version {version}")
        tag = reader.u8("protocol tag")
        protocol = TAG_PROTOCOLS.get(tag)
        if protocol is None:
            raise TranscriptDecodeError(f"unknown protocol tag 0x{tag:02x}")

        try:
            descriptor, reader.offset = decode_platform_header(reader.data, reader.offset)
        except ElementDecodeError as e:
            raise TranscriptDecodeError(f"invalid platform header: {e}") from e

        n = reader.u16("n")
        if n < 1:
            raise TranscriptDecodeError("n must be >= 1")

        # size the bases from the header alone; a huge claimed platform must not be built first
        needed = public_base_count(protocol, n) * element_size_for(descriptor)
        remaining = len(reader.data) - reader.offset
        if remaining < needed:
            raise TranscriptDecodeError(
                f"truncated transcript: {descriptor.spec} bases need {needed} bytes, {remaining} left"
            )
        group = build_platform(descriptor)
        bases = [reader.element(group, f"base {i}") for i in range(1, public_base_count(protocol, n) + 1)]

        indices = broadcast_base_indices(protocol, n)
        messages = []
        while not reader.exhausted:
            sender = reader.u16("sender")
            count = reader.u16("element count")
            if count != len(indices):
                raise TranscriptDecodeError(
                    f"user {sender} sent {count} element(s), protocol {protocol.name} expects {len(indices)}"
                )
            payload = [
                (index, reader.element(group, f"element {index} of user {sender}"))
                for index in indices
            ]
            messages.append((sender, payload))

        senders = [sender for sender, _ in messages]
        if senders != sorted(set(senders)):
            raise TranscriptDecodeError(f"messages out of sender order or duplicated: {senders}")

        try:
            return Transcript(
                protocol=protocol,
                platform=descriptor,
                n=n,
                bases=bases,
                messages=[BroadcastMessage(sender=s, payload=p) for s, p in messages],
            )
        except ValidationError as e:
            raise TranscriptDecodeError(f"invalid transcript: {e}") from e

    @staticmethod
    def to_json(transcript: Transcript) -> str:
        """Structured JSON with hex-encoded elements, for human inspection."""
        return transcript.model_dump_json(indent=2)

    @staticmethod
    def from_json(text: str) -> Transcript:
        try:
            return Transcript.model_validate_json(text)
        except ValidationError as e:
            raise TranscriptDecodeError(f"invalid transcript JSON: {e}") from e

    @staticmethod
    def transcript_id(transcript: Transcript) -> str:
        """SHA-256 of the canonical wire bytes."""
        return hashlib.sha256(TranscriptMapper.to_wire(transcript)).hexdigest()
