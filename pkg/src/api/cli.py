"""
Command-line front end.

    verify   identity suites (+ certificates) on one platform
    kex      seeded end-to-end key exchange, writes the wire transcript
    attack   transcript-only key recovery on unitriangular platforms
    certify  class / Engel certificates, rechecked from their encodings

Exit codes: 0 success, 1 check failure, 2 usage, 3 degenerate setup,
4 unsupported platform, 5 malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
import sys
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ValidationError

from src.config import Command, Config, OutputFormat
from src.constants import LOG_FORMAT
from src.mappers.transcript_mapper import TranscriptDecodeError, TranscriptMapper
from src.models.models import (
    CertificateMode,
    EngelCertificate,
    EngelVerdict,
    ProtocolKind,
)
from src.service.calculus.certification import (
    certify_class,
    certify_engel,
    diagonal_is_degenerate,
    recheck_class_certificate,
    recheck_engel_certificate,
)
from src.service.calculus.identities import run_identity_suite
from src.service.cryptanalysis.band_attack import UnsupportedPlatformError, break_transcript
from src.service.groups.base import PlatformError
from src.service.groups.platform import build_platform
from src.service.protocols.message_processor import MessageValidationError
from src.service.protocols.runner import KeyAgreementError, run_session
from src.service.protocols.session import (
    KeyDerivationError,
    SessionParams,
    SessionSetupError,
    select_public_bases,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_UNSUPPORTED = 4
EXIT_MALFORMED = 5


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--platform", help="ut:<m>:<q> or wreath:<p>")
    common.add_argument("--seed", type=int, help="seed for every random choice (default 0)")
    common.add_argument("--samples", type=int, help="random instances per sampled check")
    common.add_argument("--exhaustive", action="store_true", default=None, help="enumerate the group (tiny platforms)")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    common.add_argument("--output", type=Path, help="write the JSON report (kex: the transcript) here")
    common.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING, ...")

    parser = argparse.ArgumentParser(
        prog="nkex",
        description="Multilinear commutator maps and key exchange over nilpotent groups",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify = subparsers.add_parser("verify", parents=[common], help="run the commutator identity suites")
    verify.add_argument("--engel-k", dest="engel_k", type=int, help="also decide k-Engel")

    kex = subparsers.add_parser("kex", parents=[common], help="run a seeded key exchange session")
    kex.add_argument("--protocol", type=int, choices=[1, 2], help="protocol I or II (default 1)")
    kex.add_argument("--n", type=int, help="arity; must match the platform class")
    kex.add_argument("--transcript", type=Path, help="transcript path when --output is not given")
    kex.add_argument("--workers", type=int, help="threads for the session runner")

    attack = subparsers.add_parser("attack", parents=[common], help="recover a session key from a transcript")
    attack.add_argument("--transcript", type=Path, help="wire transcript to attack")

    certify = subparsers.add_parser("certify", parents=[common], help="issue class / Engel certificates")
    certify.add_argument("--engel-k", dest="engel_k", type=int, help="Engel length to decide")

    return parser


def load_config(args: argparse.Namespace) -> Config:
    """Explicit arguments override NKEX_* environment values."""
    values = {k: v for k, v in vars(args).items() if v is not None}
    return Config(**values)


# --- output ---

def _dump(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(k): _dump(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_dump(v) for v in value]
    return value


def emit(config: Config, document: Dict[str, Any], lines: List[str], write_output: bool = True) -> None:
    """Print text or JSON to stdout; the JSON document also goes to --output."""
    rendered = json.dumps(_dump(document), indent=2, sort_keys=True)
    if config.output_format is OutputFormat.JSON:
        print(rendered)
    else:
        print("\n".join(lines))
    if write_output and config.output is not None:
        config.output.write_text(rendered + "\n")


def _certificate_lines(document: Dict[str, Any]) -> List[str]:
    lines = []
    cert = document.get("class_certificate")
    if cert is not None:
        line = f"class {cert.class_upper}: {cert.status.value} ({cert.mode.value})"
        if cert.series_orders:
            line += f", series orders {cert.series_orders}"
        if cert.reason:
            line += f", {cert.reason}"
        lines.append(line)
        if cert.class_witness:
            lines.append(f"  witness: {' '.join(b.hex() for b in cert.class_witness)}")
    engel = document.get("engel_certificate")
    if engel is not None:
        lines.append(f"{engel.k}-Engel: {engel.verdict.value} ({engel.mode.value})")
        if engel.witness:
            lines.append(f"  witness (x, g): {' '.join(b.hex() for b in engel.witness)}")
    return lines


def _engel_length(config: Config) -> Optional[int]:
    descriptor = config.descriptor
    return config.engel_k or descriptor.claimed_not_engel


def _engel_claim_failed(config: Config, engel: Optional[EngelCertificate]) -> bool:
    # only a documented not-k-Engel claim can fail
    return (
        engel is not None
        and engel.k == config.descriptor.claimed_not_engel
        and engel.verdict is EngelVerdict.IS_K_ENGEL
    )


# --- commands ---

def cmd_verify(config: Config) -> int:
    group = build_platform(config.descriptor)
    report = run_identity_suite(group, config.samples, config.seed)
    cert = certify_class(group, exhaustive=config.exhaustive, samples=config.samples, seed=config.seed)
    k = _engel_length(config)
    engel = certify_engel(group, k, config.exhaustive, config.samples, config.seed) if k else None

    document: Dict[str, Any] = {
        "identities": report,
        "class_certificate": cert,
        "engel_certificate": engel,
    }
    if group.descriptor.claimed_class >= 2:
        document["diagonal_degenerate"] = diagonal_is_degenerate(
            group, group.descriptor.claimed_class, config.samples, config.seed
        )

    ok = report.ok and cert.confirmed and not _engel_claim_failed(config, engel)
    lines = [f"platform {report.platform}, {report.samples} samples, seed {report.seed}"]
    for check in report.checks:
        status = f"skipped ({check.skipped})" if check.skipped else f"{check.passed} passed, {check.failed} failed"
        lines.append(f"  {check.name}: {status}")
    lines += _certificate_lines(document)
    if "diagonal_degenerate" in document:
        lines.append(f"e(g, ..., g) trivial on all samples: {document['diagonal_degenerate']}")
    lines.append("OK" if ok else "FAILED")
    emit(config, document, lines)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_certify(config: Config) -> int:
    group = build_platform(config.descriptor)
    cert = certify_class(group, exhaustive=config.exhaustive, samples=config.samples, seed=config.seed)
    k = _engel_length(config) or group.descriptor.claimed_class
    engel = certify_engel(group, k, config.exhaustive, config.samples, config.seed)
    rechecked = recheck_class_certificate(group, cert) and recheck_engel_certificate(group, engel)

    document = {"class_certificate": cert, "engel_certificate": engel, "rechecked": rechecked}
    ok = cert.confirmed and rechecked and not _engel_claim_failed(config, engel)
    lines = [f"platform {group.descriptor.spec}"] + _certificate_lines(document)
    lines.append(f"witnesses recheck: {rechecked}")
    emit(config, document, lines)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_keyexchange(config: Config) -> int:
    group = build_platform(config.descriptor)
    protocol = config.session_protocol
    n = config.session_n

    cert = certify_class(group, exhaustive=config.exhaustive, samples=config.samples, seed=config.seed)
    bases = select_public_bases(group, protocol, n, seed=config.seed)
    if bases is None:
        raise SessionSetupError(f"no non-degenerate public bases found on {group.descriptor.spec}")

    engel = None
    if protocol is ProtocolKind.II:
        # the chosen (x, g) is itself the not-n-Engel witness
        engel = EngelCertificate(
            platform=group.descriptor, k=n, verdict=EngelVerdict.NOT_K_ENGEL,
            witness=[b.to_bytes() for b in bases], mode=CertificateMode.SAMPLED, seed=config.seed,
        )

    params = SessionParams(
        protocol=protocol,
        platform=group.descriptor,
        n=n,
        bases=bases,
        rng_seed=config.seed,
        class_certificate=cert,
        engel_certificate=engel,
    )
    transcript, keys = run_session(params, max_workers=config.workers)

    path = config.output or config.transcript
    wire = TranscriptMapper.to_wire(transcript)
    path.write_bytes(wire)

    document = {
        "protocol": protocol.value,
        "platform": group.descriptor.spec,
        "n": n,
        "transcript_id": TranscriptMapper.transcript_id(transcript),
        "transcript_path": str(path),
        "keys": {j: key.hex() for j, key in enumerate(keys, start=1)},
        "agreed": True,
        "transcript": json.loads(TranscriptMapper.to_json(transcript)),
    }
    lines = [
        f"Protocol {protocol.name} on {group.descriptor.spec}, n = {n}, {len(keys)} users",
        f"transcript: {path} ({len(wire)} bytes)",
    ]
    lines += [f"  user {j}: {key.hex()}" for j, key in enumerate(keys, start=1)]
    lines.append("all keys agree")
    emit(config, document, lines, write_output=False)
    return EXIT_OK


def cmd_attack(config: Config) -> int:
    try:
        data = config.transcript.read_bytes()
    except OSError as e:
        raise TranscriptDecodeError(f"cannot read {config.transcript}: {e}") from e
    transcript = TranscriptMapper.from_wire(data)
    report = break_transcript(transcript)

    lines = [
        f"transcript {report.transcript_id}",
        f"Protocol {report.protocol.name} on {report.platform}",
    ]
    lines += [f"  a_{j} = {a} (mod {report.exponent_modulus})" for j, a in sorted(report.recovered_exponents.items())]
    if report.key_hex:
        lines.append(f"recovered key: {report.key_hex}")
    if report.invalid_session:
        lines.append("invalid session: a zero exponent was published")
    if report.error:
        lines.append(f"error: {report.error}")
    lines.append(f"success: {report.success} ({report.operations_count} group multiplications)")
    emit(config, report.model_dump(mode="json"), lines)
    return EXIT_OK if report.success else EXIT_CHECK_FAILED


COMMANDS = {
    Command.VERIFY: cmd_verify,
    Command.KEX: cmd_keyexchange,
    Command.ATTACK: cmd_attack,
    Command.CERTIFY: cmd_certify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        config = load_config(args)
    except ValidationError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=config.log_level_value, format=LOG_FORMAT, stream=sys.stderr)

    try:
        return COMMANDS[config.command](config)
    except PlatformError as e:
        logger.error(f"Platform error: {e}")
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SessionSetupError as e:
        logger.error(f"Session setup failed: {e}")
        print(f"degenerate setup: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except UnsupportedPlatformError as e:
        logger.error(f"Attack not applicable: {e}")
        print(f"unsupported platform: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except TranscriptDecodeError as e:
        logger.error(f"Malformed transcript: {e}")
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except (KeyAgreementError, KeyDerivationError, MessageValidationError) as e:
        logger.error(f"Key agreement failed: {e}")
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
