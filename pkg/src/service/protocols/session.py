"""
Session setup, broadcast round and key derivation for both key exchange protocols.

Protocol I (class-n platform, n+1 users, public bases g_1..g_n):
    user j broadcasts g_i^{a_j} for i = 1..n and derives
    [peer slots]^{a_j}, the peers filling slots 1..n in ascending user order.
Protocol II (class n+1 platform, not n-Engel, public pair (x, g)):
    user j broadcasts g^{a_j} and derives [x^{a_j}, g^{a_k} for k != j].

Both end on the same key: [g_1..g_n]^{prod a} and [x,_n g]^{prod a}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.constants import WITNESS_BUDGET
from src.models.models import (
    BroadcastMessage,
    ClassCertificate,
    EngelCertificate,
    EngelVerdict,
    PlatformDescriptor,
    ProtocolKind,
    Transcript,
    broadcast_base_indices,
    public_base_count,
)
from src.service.calculus.certification import find_nondegenerate_witness
from src.service.calculus.commutators import engel_commutator, simple_commutator
from src.service.calculus.sampling import trial_rng
from src.service.groups.base import GroupElement, PlatformGroup
from src.service.groups.platform import build_platform
from src.service.protocols.message_processor import MessageProcessor

logger = logging.getLogger(__name__)


class SessionSetupError(Exception):
    """Raised when a session cannot be set up (uncertified platform, degenerate bases, bad exponents)."""
    pass


class KeyDerivationError(Exception):
    """Raised when a user cannot derive the key from a transcript."""
    pass


class SessionRound(str, Enum):
    READY = "ready"
    BROADCAST = "broadcast"
    KEYED = "keyed"


class SessionParams(BaseModel):
    """
    Public parameters shared by every user of one session.

    Attributes:
        protocol: Protocol I or II
        platform: Platform descriptor
        n: Protocol arity (n + 1 users)
        bases: g_1..g_n for Protocol I, (x, g) for Protocol II
        rng_seed: Seed for exponent sampling (None draws from system entropy)
        exponents: Injected exponents a_1..a_{n+1}, overriding sampling (tests)
        class_certificate: Confirmed class certificate for the platform
        engel_certificate: Optional not-n-Engel certificate (Protocol II)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    protocol: ProtocolKind
    platform: PlatformDescriptor
    n: int = Field(..., ge=1)
    bases: Tuple[GroupElement, ...]
    rng_seed: Optional[int] = None
    exponents: Optional[Tuple[int, ...]] = None
    class_certificate: Optional[ClassCertificate] = None
    engel_certificate: Optional[EngelCertificate] = None

    @model_validator(mode="after")
    def validate_shape(self) -> "SessionParams":
        expected = public_base_count(self.protocol, self.n)
        if len(self.bases) != expected:
            raise ValueError(f"Protocol {self.protocol.name} with n={self.n} needs {expected} bases, got {len(self.bases)}")
        for g in self.bases:
            if g.group.descriptor != self.platform:
                raise ValueError(f"base of {g.group.descriptor.spec} in a {self.platform.spec} session")
        if self.exponents is not None and len(self.exponents) != self.users:
            raise ValueError(f"{self.users} users but {len(self.exponents)} injected exponents")
        return self

    @property
    def users(self) -> int:
        return self.n + 1

    @property
    def group(self) -> PlatformGroup:
        return build_platform(self.platform)

    @property
    def required_class(self) -> int:
        return self.n if self.protocol is ProtocolKind.I else self.n + 1

    def expected_key_base(self) -> GroupElement:
        """[g_1..g_n] (Protocol I) or [x,_n g] (Protocol II)."""
        if self.protocol is ProtocolKind.I:
            return simple_commutator(self.bases)
        x, g = self.bases
        return engel_commutator(x, g, self.n)

    def header(self) -> Transcript:
        """Transcript carrying only the public header (no messages yet)."""
        return Transcript(
            protocol=self.protocol,
            platform=self.platform,
            n=self.n,
            bases=[g.to_bytes() for g in self.bases],
        )


@dataclass(frozen=True)
class PrivateExponent:
    user_index: int
    value: int = field(repr=False)

    @classmethod
    def validated(cls, user_index: int, value: int, q: int) -> "PrivateExponent":
        if not 1 <= value <= q - 1:
            raise SessionSetupError(f"exponent of user {user_index} must lie in [1, {q - 1}]")
        return cls(user_index=user_index, value=value)


@dataclass(frozen=True)
class SharedKey:
    """The agreed group element and its canonical bytes."""

    element: GroupElement

    @property
    def key_bytes(self) -> bytes:
        return self.element.to_bytes()

    def hex(self) -> str:
        return self.key_bytes.hex()


@dataclass
class UserState:
    """One user's view: public params plus their own exponent."""

    params: SessionParams
    exponent: PrivateExponent = field(repr=False)
    round: SessionRound = SessionRound.READY
    key: Optional[SharedKey] = field(default=None, repr=False)

    @property
    def index(self) -> int:
        return self.exponent.user_index


def _draw_exponents(params: SessionParams, q: int) -> List[int]:
    if params.exponents is not None:
        return list(params.exponents)
    rng = random.Random(params.rng_seed) if params.rng_seed is not None else random.SystemRandom()
    return [rng.randint(1, q - 1) for _ in range(params.users)]


def _check_certificates(params: SessionParams) -> None:
    cert = params.class_certificate
    if cert is None:
        raise SessionSetupError(f"{params.platform.spec}: no class certificate supplied")
    if cert.platform != params.platform:
        raise SessionSetupError(f"class certificate is for {cert.platform.spec}, session uses {params.platform.spec}")
    if not cert.confirmed:
        raise SessionSetupError(f"{params.platform.spec}: class certificate refuted ({cert.reason})")
    if params.protocol is ProtocolKind.I and params.n < 2:
        raise SessionSetupError("Protocol I needs n >= 2 (a class-1 platform is abelian)")
    if cert.class_upper != params.required_class:
        raise SessionSetupError(
            f"Protocol {params.protocol.name} with n={params.n} needs class {params.required_class}, "
            f"platform is certified at class {cert.class_upper}"
        )

    engel = params.engel_certificate
    if engel is not None:
        if engel.platform != params.platform or engel.k != params.n:
            raise SessionSetupError(f"Engel certificate does not cover {params.platform.spec} with k={params.n}")
        if engel.verdict is not EngelVerdict.NOT_K_ENGEL:
            raise SessionSetupError(f"{params.platform.spec} is {params.n}-Engel: every Protocol II key is trivial")


def setup_session(params: SessionParams) -> List[UserState]:
    """
    Validate the session parameters and hand each user its exponent.

    Raises:
        SessionSetupError: Uncertified platform, degenerate bases or invalid injected exponents
    """
    _check_certificates(params)

    key_base = params.expected_key_base()
    if key_base.is_identity():
        raise SessionSetupError(
            f"degenerate bases on {params.platform.spec}: the shared key would be the identity"
        )

    q = params.group.characteristic
    exponents = [
        PrivateExponent.validated(j, a, q)
        for j, a in enumerate(_draw_exponents(params, q), start=1)
    ]

    logger.info(
        f"Session set up: protocol {params.protocol.name}, {params.platform.spec}, {params.users} users"
    )
    return [UserState(params=params, exponent=exponent) for exponent in exponents]


def round_broadcast(state: UserState) -> BroadcastMessage:
    """Raise the public bases to the user's exponent (g_i^{a_j}, or g^{a_j})."""
    params = state.params
    group = params.group
    a = state.exponent.value
    payload = [
        (index, group.power(params.bases[index - 1], a).to_bytes())
        for index in broadcast_base_indices(params.protocol, params.n)
    ]
    if state.round is SessionRound.READY:
        state.round = SessionRound.BROADCAST
    logger.debug(f"User {state.index} broadcast {len(payload)} element(s)")
    return BroadcastMessage(sender=state.index, payload=payload)


def _check_transcript(params: SessionParams, transcript: Transcript) -> None:
    if (
        transcript.protocol is not params.protocol
        or transcript.platform != params.platform
        or transcript.n != params.n
        or list(transcript.bases) != [g.to_bytes() for g in params.bases]
    ):
        raise KeyDerivationError("transcript header does not match the session parameters")


def derive_key(state: UserState, transcript: Transcript) -> SharedKey:
    """
    Assemble the user's bracket from the peers' messages and evaluate it.

    Raises:
        KeyDerivationError: Transcript of another session, or a missing peer message
        MessageValidationError: Structurally malformed peer message
        ElementDecodeError: Peer element bytes that do not decode
    """
    params = state.params
    group = params.group
    _check_transcript(params, transcript)

    processor = MessageProcessor(group, params.protocol, params.n)
    peers: Dict[int, List[GroupElement]] = processor.collect_peers(transcript, exclude=state.index)
    missing = [k for k in range(1, params.users + 1) if k != state.index and k not in peers]
    if missing:
        raise KeyDerivationError(f"user {state.index}: no message from user(s) {missing}")

    a = state.exponent.value
    order = sorted(peers)
    if params.protocol is ProtocolKind.I:
        # peer in position i (ascending, j skipped) supplies g_i^{a_k}
        slots = [peers[k][i] for i, k in enumerate(order)]
        element = group.power(simple_commutator(slots), a)
    else:
        x = params.bases[0]
        element = simple_commutator([group.power(x, a), *(peers[k][0] for k in order)])

    key = SharedKey(element=element)
    state.key = key
    state.round = SessionRound.KEYED
    logger.info(f"User {state.index} derived the session key")
    return key


def select_public_bases(
    group: PlatformGroup,
    protocol: ProtocolKind,
    n: int,
    seed: int = 0,
    budget: int = WITNESS_BUDGET,
) -> Optional[Tuple[GroupElement, ...]]:
    """
    Seeded choice of non-degenerate public bases.

    Protocol I: random n-tuples until [g_1..g_n] != 1.
    Protocol II: a pair (x, g) with [x,_n g] != 1.
    Returns None when the budget runs out.
    """
    if protocol is ProtocolKind.II:
        return find_nondegenerate_witness(group, n + 1, budget=budget, seed=seed)

    for trial in range(budget):
        rng = trial_rng(seed, trial)
        bases = tuple(group.random_element(rng) for _ in range(n))
        if not simple_commutator(bases).is_identity():
            return bases
    logger.warning(f"{group.descriptor.spec}: no non-degenerate Protocol I bases in {budget} trials")
    return None


def expected_session_key(params: SessionParams, exponents: Sequence[int]) -> GroupElement:
    """Closed form of the shared key for known exponents."""
    product = 1
    for a in exponents:
        product *= a
    return params.group.power(params.expected_key_base(), product)
