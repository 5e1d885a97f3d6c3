"""
End-to-end session runner: setup, one broadcast round, transcript assembly, key derivation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
import logging
from typing import Callable, Iterable, List, Tuple, TypeVar

from src.constants import SESSION_WORKERS
from src.models.models import Transcript
from src.service.protocols.bus import (
    BroadcastChannel,
    BroadcastProducer,
    ChannelConfig,
    TranscriptConsumer,
)
from src.service.protocols.message_processor import MessageProcessor, MessageValidationError
from src.service.protocols.session import (
    SessionParams,
    SharedKey,
    UserState,
    derive_key,
    round_broadcast,
    setup_session,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


class KeyAgreementError(Exception):
    """Raised when the users of a session end up with different keys."""
    pass


def _fan_out(fn: Callable[[UserState], T], states: Iterable[UserState], max_workers: int) -> List[T]:
    # each state is touched by exactly one call, results keep user order
    if max_workers <= 1:
        return [fn(state) for state in states]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, states))


def session_label(params: SessionParams) -> str:
    return f"protocol-{params.protocol.name}:{params.platform.spec}:seed={params.rng_seed}"


def run_session(
    params: SessionParams,
    max_workers: int = SESSION_WORKERS,
) -> Tuple[Transcript, List[SharedKey]]:
    """
    Run a full session and check key agreement.

    Returns:
        (transcript, keys) with keys in user order

    Raises:
        SessionSetupError: From setup
        KeyDerivationError: From derivation
        KeyAgreementError: If two users derived different keys
    """
    states = setup_session(params)
    label = session_label(params)

    channel = BroadcastChannel(ChannelConfig(session_id=label, expected_senders=params.users))
    producer = BroadcastProducer(channel)
    processor = MessageProcessor(params.group, params.protocol, params.n)

    for message in _fan_out(round_broadcast, states, max_workers):
        logger.debug(processor.format_message_log(message))
        if not producer.produce(message):
            raise MessageValidationError(f"{label}: broadcast from user {message.sender} rejected")

    transcript = TranscriptConsumer(channel).assemble(params.header())
    keys = _fan_out(lambda state: derive_key(state, transcript), states, max_workers)

    distinct = {key.key_bytes for key in keys}
    if len(distinct) != 1:
        raise KeyAgreementError(f"{label}: {len(distinct)} distinct keys among {len(keys)} users")

    logger.info(f"{label}: {len(keys)} users agree on the key")
    return transcript, keys
