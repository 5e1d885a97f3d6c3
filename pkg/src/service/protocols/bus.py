"""
In-memory broadcast bus.

Users publish immutable BroadcastMessages to a shared channel; the transcript
consumer is the single serialization point and orders messages by sender.
"""

from dataclasses import dataclass
import logging
import threading
from typing import Dict, List

from src.models.models import BroadcastMessage, Transcript
from src.service.protocols.message_processor import MessageValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChannelConfig:
    """
    Broadcast channel configuration.

    Attributes:
        session_id: Label used in log lines
        expected_senders: Number of users that must publish before assembly
    """
    session_id: str
    expected_senders: int

    def __post_init__(self):
        """Validate configuration."""
        if not self.session_id:
            raise ValueError("session_id is required")
        if self.expected_senders < 1:
            raise ValueError("expected_senders must be >= 1")


class BroadcastChannel:
    """Append-only, lock-protected message log for one session."""

    def __init__(self, config: ChannelConfig):
        self.config = config
        self._messages: Dict[int, BroadcastMessage] = {}
        self._lock = threading.Lock()

    def publish(self, message: BroadcastMessage) -> None:
        """
        Append a message.

        Raises:
            MessageValidationError: If the sender already published
        """
        with self._lock:
            if message.sender in self._messages:
                raise MessageValidationError(
                    f"{self.config.session_id}: user {message.sender} already published"
                )
            self._messages[message.sender] = message

    def snapshot(self) -> List[BroadcastMessage]:
        """Messages published so far, ordered by sender."""
        with self._lock:
            return [self._messages[sender] for sender in sorted(self._messages)]

    def __len__(self) -> int:
        with self._lock:
            return len(self._messages)


class BroadcastProducer:
    """Publishes user messages to a channel."""

    def __init__(self, channel: BroadcastChannel):
        self.channel = channel

    def produce(self, message: BroadcastMessage) -> bool:
        """
        Publish one message.

        Returns:
            bool: True if published, False if the channel rejected it
        """
        try:
            self.channel.publish(message)
            logger.debug(f"{self.channel.config.session_id}: produced message from user {message.sender}")
            return True
        except MessageValidationError as e:
            logger.error(f"Failed to produce message: {e}")
            return False


class TranscriptConsumer:
    """Assembles the session transcript once every user has published."""

    def __init__(self, channel: BroadcastChannel):
        self.channel = channel

    def is_complete(self) -> bool:
        return len(self.channel) == self.channel.config.expected_senders

    def assemble(self, header: Transcript) -> Transcript:
        """
        Attach the channel's messages to a header-only transcript.

        Raises:
            MessageValidationError: If some user has not published
        """
        messages = self.channel.snapshot()
        senders = [m.sender for m in messages]
        expected = list(range(1, self.channel.config.expected_senders + 1))
        if senders != expected:
            missing = sorted(set(expected) - set(senders))
            raise MessageValidationError(
                f"{self.channel.config.session_id}: transcript incomplete, missing user(s) {missing}"
            )
        logger.info(f"{self.channel.config.session_id}: transcript assembled from {len(messages)} messages")
        return header.model_copy(update={"messages": messages})
