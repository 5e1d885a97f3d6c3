"""
First-band attack on unitriangular platforms.

If d is the first superdiagonal band where g = I + N is nonzero, then
g^a = I + aN + C(a, 2)N^2 + ... and N^2 starts at band 2d, so band d of g^a
is a times band d of g (mod q). One field division per public element
recovers every exponent mod q, and with them the session key.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
import hashlib
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from src.mappers.transcript_mapper import TranscriptMapper
from src.models.models import AttackReport, PlatformFamily, ProtocolKind, Transcript
from src.service.cryptanalysis.dlp import OperationCounter
from src.service.groups.base import ElementDecodeError, GroupElement
from src.service.groups.platform import build_platform, same_platform
from src.service.groups.unitriangular import UnitriangularGroup, UTMatrix
from src.service.protocols.message_processor import MessageProcessor, MessageValidationError

logger = logging.getLogger(__name__)


class UnsupportedPlatformError(Exception):
    """Raised when an attack is pointed at a platform or protocol it does not cover."""
    pass


class ExponentExtractionError(Exception):
    """Raised when h is not a power of g (inconsistent band entries)."""
    pass


def _extract(g: UTMatrix, h: UTMatrix) -> Tuple[Optional[int], int]:
    """Exponent (or None when g is the identity) plus the number of field operations spent."""
    group = same_platform(g, h)
    if not isinstance(g, UTMatrix):
        raise UnsupportedPlatformError(f"band extraction needs a unitriangular platform, got {group.descriptor.spec}")

    d = g.first_nonzero_band()
    if d is None:
        return None, 0
    for lower in range(1, d):
        if any(h.band(lower)):
            raise ExponentExtractionError(f"h is not a power of g: band {lower} of h is nonzero")

    q = g.modulus.q
    exponent = None
    field_ops = 0
    for g_entry, h_entry in zip(g.band(d), h.band(d)):
        if g_entry == 0:
            if h_entry != 0:
                raise ExponentExtractionError("h is not a power of g: entry outside g's band support")
            continue
        candidate = h_entry * pow(g_entry, -1, q) % q
        field_ops += 2
        if exponent is None:
            exponent = candidate
        elif candidate != exponent:
            raise ExponentExtractionError(
                f"h is not a power of g: band {d} gives both {exponent} and {candidate}"
            )
    return exponent, field_ops


def extract_exponent_ut(g: UTMatrix, h: UTMatrix) -> Optional[int]:
    """
    Recover a mod q from h = g^a using g's first nonzero band.

    Returns:
        a in [0, q - 1], or None (indeterminate) when g is the identity

    Raises:
        ExponentExtractionError: If the band entries disagree
        UnsupportedPlatformError: If the elements are not unitriangular matrices
    """
    exponent, _ = _extract(g, h)
    return exponent


def _transcript_id(transcript: Transcript) -> str:
    try:
        return TranscriptMapper.transcript_id(transcript)
    except ValueError:
        # elements of the wrong size have no wire form
        return hashlib.sha256(transcript.model_dump_json().encode()).hexdigest()


def _require_ut(transcript: Transcript, protocol: ProtocolKind) -> UnitriangularGroup:
    if transcript.platform.family is not PlatformFamily.UNITRIANGULAR:
        raise UnsupportedPlatformError(
            f"unsupported platform {transcript.platform.spec}: the band attack needs unitriangular matrices"
        )
    if transcript.protocol is not protocol:
        raise UnsupportedPlatformError(
            f"expected a Protocol {protocol.name} transcript, got Protocol {transcript.protocol.name}"
        )
    return build_platform(transcript.platform)


def _break(transcript: Transcript, protocol: ProtocolKind, reference_key: Optional[bytes]) -> AttackReport:
    group = _require_ut(transcript, protocol)
    q = group.q
    report = AttackReport(
        transcript_id=_transcript_id(transcript),
        protocol=transcript.protocol,
        platform=transcript.platform.spec,
        exponent_modulus=q,
    )
    counter = OperationCounter(group)
    processor = MessageProcessor(group, transcript.protocol, transcript.n)

    try:
        bases = [group.deserialize(b) for b in transcript.bases]
        published = processor.collect_peers(transcript)
    except (ElementDecodeError, MessageValidationError) as e:
        report.error = f"malformed transcript: {e}"
        logger.warning(f"Attack on {report.transcript_id[:12]}: {report.error}")
        return report

    missing = [j for j in range(1, transcript.users + 1) if j not in published]
    if missing:
        report.error = f"incomplete transcript: no message from user(s) {missing}"
        return report

    # (base, published power) pairs available per user, in payload order
    if protocol is ProtocolKind.I:
        pairs: Dict[int, List[Tuple[GroupElement, GroupElement]]] = {
            j: list(zip(bases, elements)) for j, elements in published.items()
        }
        key_base = counter.simple_commutator(bases)
    else:
        x, g = bases
        pairs = {j: [(g, elements[0])] for j, elements in published.items()}
        key_base = counter.simple_commutator([x] + [g] * transcript.n)

    field_ops = 0
    for j in sorted(pairs):
        exponent = None
        for base, power in pairs[j]:
            try:
                exponent, spent = _extract(base, power)
            except ExponentExtractionError as e:
                report.error = f"user {j}: {e}"
                report.field_operations = field_ops
                report.operations_count += counter.count
                logger.warning(f"Attack on {report.transcript_id[:12]}: {report.error}")
                return report
            field_ops += spent
            if exponent is not None:
                break
        if exponent is None:
            report.error = f"user {j}: extraction indeterminate for all bases"
            report.field_operations = field_ops
            report.operations_count += counter.count
            return report
        report.recovered_exponents[j] = exponent

    logger.debug(f"Recovered exponents mod {q}: {report.recovered_exponents}")
    if any(a == 0 for a in report.recovered_exponents.values()):
        report.invalid_session = True

    product = 1
    for a in report.recovered_exponents.values():
        product = product * a % q
    key = counter.power(key_base, product)
    report.key_hex = key.to_bytes().hex()

    if reference_key is not None:
        consistent = key.to_bytes() == reference_key
    else:
        # every published element must be reproduced by its recovered exponent
        consistent = all(
            counter.power(base, report.recovered_exponents[j]) == power
            for j in sorted(pairs)
            for base, power in pairs[j]
        )

    report.success = consistent and not report.invalid_session
    report.field_operations = field_ops
    report.operations_count += counter.count
    logger.info(
        f"Attack on {transcript.platform.spec} Protocol {protocol.name}: success={report.success}, "
        f"{report.operations_count} group multiplications"
    )
    return report


def break_protocol1_ut(transcript: Transcript, reference_key: Optional[bytes] = None) -> AttackReport:
    """
    Recover the Protocol I key from a unitriangular transcript alone.

    Args:
        transcript: Public transcript of the session
        reference_key: Honest key bytes (test mode); without it success means
            the recovered exponents reproduce every published element

    Raises:
        UnsupportedPlatformError: Wreath platform or Protocol II transcript
    """
    return _break(transcript, ProtocolKind.I, reference_key)


def break_protocol2_ut(transcript: Transcript, reference_key: Optional[bytes] = None) -> AttackReport:
    """Recover the Protocol II key [x,_n g]^{prod a} from g^{a_j}."""
    return _break(transcript, ProtocolKind.II, reference_key)


def break_transcript(transcript: Transcript, reference_key: Optional[bytes] = None) -> AttackReport:
    """Dispatch on the transcript's protocol."""
    if transcript.protocol is ProtocolKind.I:
        return break_protocol1_ut(transcript, reference_key)
    return break_protocol2_ut(transcript, reference_key)


def break_many(transcripts: Iterable[Transcript], max_workers: int = 1) -> List[AttackReport]:
    """Attack independent transcripts, reports in input order."""
    transcripts = list(transcripts)
    if max_workers <= 1:
        return [break_transcript(t) for t in transcripts]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(break_transcript, transcripts))
