"""
Message Processor for broadcast messages.

Structural validation and decoding of the public values users exchange,
separated from the session state so it can be unit tested on its own.
"""

import logging
from typing import Dict, List, Optional

from src.models.models import BroadcastMessage, ProtocolKind, Transcript, broadcast_base_indices
from src.service.groups.base import GroupElement, PlatformGroup

logger = logging.getLogger(__name__)


class MessageValidationError(Exception):
    """Raised when message validation fails."""
    pass


class MessageProcessor:
    """
    Validates and decodes BroadcastMessages for one session shape.

    Pure logic: no state is kept between calls.
    """

    def __init__(self, group: PlatformGroup, protocol: ProtocolKind, n: int):
        """
        Initialize message processor.

        Args:
            group: Platform the elements belong to
            protocol: Protocol I or II
            n: Protocol arity (n + 1 users)
        """
        self.group = group
        self.protocol = protocol
        self.n = n
        self.base_indices = broadcast_base_indices(protocol, n)

    @property
    def users(self) -> int:
        return self.n + 1

    def validate_message(self, message: BroadcastMessage) -> None:
        """
        Check sender range, element count and base indices.

        Raises:
            MessageValidationError: If the message does not fit the session shape
        """
        if not 1 <= message.sender <= self.users:
            raise MessageValidationError(f"sender {message.sender} outside 1..{self.users}")

        indices = [index for index, _ in message.payload]
        if indices != self.base_indices:
            raise MessageValidationError(
                f"user {message.sender}: expected base indices {self.base_indices}, got {indices}"
            )

        for index, element in message.payload:
            if len(element) != self.group.element_size:
                raise MessageValidationError(
                    f"user {message.sender}: element for base {index} has {len(element)} bytes, "
                    f"expected {self.group.element_size}"
                )

    def decode_message(self, message: BroadcastMessage) -> List[GroupElement]:
        """
        Validate the message and decode its elements, in payload order.

        Raises:
            MessageValidationError: Structural problems
            ElementDecodeError: Element bytes out of range
        """
        self.validate_message(message)
        return [self.group.deserialize(element) for element in message.elements()]

    def collect_peers(
        self,
        transcript: Transcript,
        exclude: Optional[int] = None,
    ) -> Dict[int, List[GroupElement]]:
        """Decoded elements of every message in the transcript, keyed by sender."""
        peers: Dict[int, List[GroupElement]] = {}
        seen = set()
        for message in transcript.messages:
            if message.sender in seen:
                raise MessageValidationError(f"duplicate message from user {message.sender}")
            seen.add(message.sender)
            if message.sender == exclude:
                self.validate_message(message)
                continue
            peers[message.sender] = self.decode_message(message)
        return peers

    def format_message_log(self, message: BroadcastMessage) -> str:
        """
        Format a broadcast message for logging/display.

        Only sizes and a short prefix of each element are shown.
        """
        previews = ", ".join(
            f"{index}:{element[:4].hex()}{'..' if len(element) > 4 else ''}"
            for index, element in message.payload
        )
        return (
            f"[BROADCAST] {self.group.descriptor.spec} protocol {self.protocol.name} | "
            f"user {message.sender} | {len(message.payload)} element(s) | {previews}"
        )
