"""
Key Exchange Protocols Module.

- session: parameters, user states, broadcast round and key derivation
- message_processor: validation and decoding of broadcast messages
- bus: in-memory broadcast channel and transcript assembly
- runner: end-to-end sessions
"""

from src.service.protocols.bus import (
    BroadcastChannel,
    BroadcastProducer,
    ChannelConfig,
    TranscriptConsumer,
)
from src.service.protocols.message_processor import MessageProcessor, MessageValidationError
from src.service.protocols.runner import KeyAgreementError, run_session, session_label
from src.service.protocols.session import (
    KeyDerivationError,
    PrivateExponent,
    SessionParams,
    SessionRound,
    SessionSetupError,
    SharedKey,
    UserState,
    derive_key,
    expected_session_key,
    round_broadcast,
    select_public_bases,
    setup_session,
)

__all__ = [
    'BroadcastChannel',
    'BroadcastProducer',
    'ChannelConfig',
    'KeyAgreementError',
    'KeyDerivationError',
    'MessageProcessor',
    'MessageValidationError',
    'PrivateExponent',
    'SessionParams',
    'SessionRound',
    'SessionSetupError',
    'SharedKey',
    'TranscriptConsumer',
    'UserState',
    'derive_key',
    'expected_session_key',
    'round_broadcast',
    'run_session',
    'select_public_bases',
    'session_label',
    'setup_session',
]
