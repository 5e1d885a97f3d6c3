from __future__ import annotations

from enum import Enum, IntEnum
import re
from typing import Annotated, Any, Dict, List, Optional, Tuple

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)
from sympy import isprime

from src.constants import MAX_HEADER_PARAM, MAX_WREATH_PRIME

PLATFORM_PATTERN = re.compile(r"^(ut):(\d+):(\d+)$|^(wreath):(\d+)$")


def from_hex(value: Any) -> Any:
    """Accept hex strings wherever raw bytes are expected (JSON documents)."""
    if isinstance(value, str):
        try:
            return bytes.fromhex(value)
        except ValueError as e:
            raise ValueError(f"Invalid hex string: {value!r}") from e
    return value


# Canonical element encodings travel as bytes and are rendered as hex in JSON.
HexBytes = Annotated[
    bytes,
    BeforeValidator(from_hex),
    PlainSerializer(lambda b: b.hex(), return_type=str, when_used="json"),
]


class PlatformFamily(str, Enum):
    UNITRIANGULAR = "unitriangular"
    WREATH = "wreath"


class ProtocolKind(IntEnum):
    I = 1
    II = 2


class CertificateMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


class CertificateStatus(str, Enum):
    CONFIRMED = "confirmed"
    REFUTED = "refuted"


class EngelVerdict(str, Enum):
    IS_K_ENGEL = "is_k_engel"
    NOT_K_ENGEL = "not_k_engel"


# --- Platform descriptor ---

class PlatformDescriptor(BaseModel):
    """Names a platform group, its parameters and its claimed class / Engel status.

    unitriangular: params = (m, q), claimed_class = m - 1
    wreath:        params = (p,),  claimed_class = p, claimed_not_engel = p - 1
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: PlatformFamily
    params: Tuple[int, ...]
    claimed_class: int
    claimed_not_engel: Optional[int] = None

    @model_validator(mode="before")
    @classmethod
    def fill_claims(cls, data: Any) -> Any:
        # Claims follow from the family, so callers may leave them out.
        if not isinstance(data, dict):
            return data
        data = dict(data)
        family = data.get("family")
        params = tuple(data.get("params") or ())
        if family in (PlatformFamily.UNITRIANGULAR, PlatformFamily.UNITRIANGULAR.value) and len(params) == 2:
            data.setdefault("claimed_class", params[0] - 1)
        elif family in (PlatformFamily.WREATH, PlatformFamily.WREATH.value) and len(params) == 1:
            data.setdefault("claimed_class", params[0])
            data.setdefault("claimed_not_engel", params[0] - 1)
        return data

    @model_validator(mode="after")
    def validate_params(self) -> "PlatformDescriptor":
        if any(v < 0 or v > MAX_HEADER_PARAM for v in self.params):
            raise ValueError(f"platform params must fit in u32: {self.params}")

        if self.family is PlatformFamily.UNITRIANGULAR:
            if len(self.params) != 2:
                raise ValueError("unitriangular platform needs params (m, q)")
            m, q = self.params
            if m < 2:
                raise ValueError(f"matrix dimension must be >= 2, got {m}")
            if not isprime(q):
                raise ValueError(f"modulus must be prime, got {q}")
            if self.claimed_class != m - 1:
                raise ValueError(f"UT({m}, {q}) has class {m - 1}, not {self.claimed_class}")
            if self.claimed_not_engel is not None and self.claimed_not_engel >= m - 1:
                raise ValueError("a class-n group is n-Engel")
        else:
            if len(self.params) != 1:
                raise ValueError("wreath platform needs params (p,)")
            (p,) = self.params
            if not isprime(p):
                raise ValueError(f"wreath prime must be prime, got {p}")
            if p > MAX_WREATH_PRIME:
                raise ValueError(f"wreath prime must be < 256 for the byte encoding, got {p}")
            if self.claimed_class != p or self.claimed_not_engel != p - 1:
                raise ValueError(f"Z_{p} wr Z_{p} has class {p} and is not {p - 1}-Engel")

        return self

    @classmethod
    def unitriangular(cls, m: int, q: int) -> "PlatformDescriptor":
        return cls(family=PlatformFamily.UNITRIANGULAR, params=(m, q))

    @classmethod
    def wreath(cls, p: int) -> "PlatformDescriptor":
        return cls(family=PlatformFamily.WREATH, params=(p,))

    @classmethod
    def parse(cls, spec: str) -> "PlatformDescriptor":
        """Parse a platform spec string: ``ut:<m>:<q>`` or ``wreath:<p>``."""
        match = PLATFORM_PATTERN.match(spec.strip().lower())
        if not match:
            raise ValueError(f"Invalid platform spec: {spec!r}. Expected ut:<m>:<q> or wreath:<p>")
        if match.group(1):
            return cls.unitriangular(int(match.group(2)), int(match.group(3)))
        return cls.wreath(int(match.group(5)))

    @property
    def characteristic(self) -> int:
        """Residue characteristic the exponents act through (q for UT, p for wreath)."""
        return self.params[-1] if self.family is PlatformFamily.UNITRIANGULAR else self.params[0]

    @property
    def spec(self) -> str:
        if self.family is PlatformFamily.UNITRIANGULAR:
            return f"ut:{self.params[0]}:{self.params[1]}"
        return f"wreath:{self.params[0]}"


# --- Certificates ---

class ClassCertificate(BaseModel):
    """Evidence for a nilpotency class claim.

    Sampled certificates are evidence, exhaustive ones are proofs for the enumerated group.
    """

    model_config = ConfigDict(frozen=True)

    platform: PlatformDescriptor
    class_upper: int
    class_witness: List[HexBytes] = Field(default_factory=list)
    mode: CertificateMode
    samples: Optional[int] = None
    seed: Optional[int] = None
    status: CertificateStatus = CertificateStatus.CONFIRMED
    reason: Optional[str] = None
    counterexample: List[HexBytes] = Field(default_factory=list)
    series_orders: Optional[List[int]] = None
    last_term_central: Optional[bool] = None

    @property
    def confirmed(self) -> bool:
        return self.status is CertificateStatus.CONFIRMED


class EngelCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    platform: PlatformDescriptor
    k: int
    verdict: EngelVerdict
    witness: List[HexBytes] = Field(default_factory=list)
    mode: CertificateMode
    samples: Optional[int] = None
    seed: Optional[int] = None

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Engel length k must be >= 1")
        return v

    @model_validator(mode="after")
    def validate_witness(self) -> "EngelCertificate":
        if self.verdict is EngelVerdict.NOT_K_ENGEL and len(self.witness) != 2:
            raise ValueError("not_k_engel verdict needs a witness pair (x, g)")
        return self


# --- Protocol messages ---

class BroadcastMessage(BaseModel):
    """Public values one user puts on the broadcast channel.

    payload holds (base index, canonical element bytes); the base index is the
    1-based position of the base in the session's public bases.
    """

    model_config = ConfigDict(frozen=True)

    sender: int = Field(..., ge=1, description="1-based user index")
    payload: List[Tuple[int, HexBytes]] = Field(..., description="(base index, element bytes)")

    def elements(self) -> List[bytes]:
        return [element for _, element in self.payload]


class Transcript(BaseModel):
    """Every public value of a session, in sender order."""

    model_config = ConfigDict(frozen=True)

    protocol: ProtocolKind
    platform: PlatformDescriptor
    n: int = Field(..., ge=1)
    bases: List[HexBytes]
    messages: List[BroadcastMessage] = Field(default_factory=list)

    @property
    def users(self) -> int:
        return self.n + 1

    def message_from(self, sender: int) -> Optional[BroadcastMessage]:
        for message in self.messages:
            if message.sender == sender:
                return message
        return None


# --- Attack output ---

class AttackReport(BaseModel):
    """Outcome of a transcript-only key recovery attempt.

    Exponents are recovered modulo exponent_modulus (the residue characteristic);
    the key depends on each exponent only through that residue.
    """

    transcript_id: str
    protocol: ProtocolKind
    platform: str
    exponent_modulus: int
    recovered_exponents: Dict[int, int] = Field(default_factory=dict)
    key_hex: Optional[str] = None
    success: bool = False
    invalid_session: bool = False
    error: Optional[str] = None
    operations_count: int = 0
    field_operations: int = 0


# --- Identity suite output ---

class IdentityCheck(BaseModel):
    name: str
    passed: int = 0
    failed: int = 0
    skipped: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


class IdentitySuiteReport(BaseModel):
    """Pass/fail counts of the commutator identity checks on one platform."""

    platform: str
    samples: int
    seed: int
    checks: List[IdentityCheck] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)


def broadcast_base_indices(protocol: ProtocolKind, n: int) -> List[int]:
    """Base indices a broadcast message carries: g_1..g_n (Protocol I) or g alone (Protocol II)."""
    if protocol is ProtocolKind.I:
        return list(range(1, n + 1))
    # Protocol II bases are (x, g); only g is ever raised and sent
    return [2]


def public_base_count(protocol: ProtocolKind, n: int) -> int:
    return n if protocol is ProtocolKind.I else 2
