"""
Platform construction, free-function group operations and the platform header codec.

Platform header: family tag byte (0x01 UT, 0x02 wreath) followed by the
params as big-endian u32 values (m, q for UT; p for wreath).
"""

from __future__ import annotations

from functools import lru_cache
import logging
import struct
from typing import Tuple

from pydantic import ValidationError

from src.constants import FAMILY_TAG_UNITRIANGULAR, FAMILY_TAG_WREATH
from src.models.models import PlatformDescriptor, PlatformFamily
from src.service.groups.base import (
    ElementDecodeError,
    GroupElement,
    PlatformError,
    PlatformGroup,
    PlatformMismatchError,
)
from src.service.groups.modular import Modulus
from src.service.groups.unitriangular import UnitriangularGroup
from src.service.groups.wreath import WreathGroup

logger = logging.getLogger(__name__)

FAMILY_TAGS = {
    PlatformFamily.UNITRIANGULAR: FAMILY_TAG_UNITRIANGULAR,
    PlatformFamily.WREATH: FAMILY_TAG_WREATH,
}
TAG_FAMILIES = {tag: family for family, tag in FAMILY_TAGS.items()}
PARAM_COUNTS = {PlatformFamily.UNITRIANGULAR: 2, PlatformFamily.WREATH: 1}


@lru_cache(maxsize=64)
def build_platform(descriptor: PlatformDescriptor) -> PlatformGroup:
    """Return the (cached) group for a validated descriptor."""
    logger.debug(f"Building platform {descriptor.spec}")
    if descriptor.family is PlatformFamily.UNITRIANGULAR:
        return UnitriangularGroup(descriptor)
    return WreathGroup(descriptor)


def element_size_for(descriptor: PlatformDescriptor) -> int:
    """Canonical element size in bytes, computed without building the group."""
    if descriptor.family is PlatformFamily.UNITRIANGULAR:
        m, q = descriptor.params
        return m * (m - 1) // 2 * Modulus(q).byte_width
    return descriptor.params[0] + 1


def parse_platform(spec: str) -> PlatformGroup:
    """Build a platform from ``ut:<m>:<q>`` / ``wreath:<p>``."""
    try:
        descriptor = PlatformDescriptor.parse(spec)
    except (ValidationError, ValueError) as e:
        raise PlatformError(f"Invalid platform {spec!r}: {e}") from e
    return build_platform(descriptor)


def group_identity(platform: PlatformDescriptor | PlatformGroup) -> GroupElement:
    group = platform if isinstance(platform, PlatformGroup) else build_platform(platform)
    return group.identity()


def same_platform(a: GroupElement, b: GroupElement) -> PlatformGroup:
    if a.group is not b.group and a.group.descriptor != b.group.descriptor:
        raise PlatformMismatchError(
            f"cannot combine {a.group.descriptor.spec} with {b.group.descriptor.spec}"
        )
    return a.group


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    return same_platform(a, b).multiply(a, b)


def inverse(a: GroupElement) -> GroupElement:
    return a.group.inverse(a)


def power(g: GroupElement, exponent: int) -> GroupElement:
    return g.group.power(g, exponent)


def serialize(g: GroupElement) -> bytes:
    return g.group.serialize(g)


def deserialize(data: bytes, platform: PlatformDescriptor | PlatformGroup) -> GroupElement:
    group = platform if isinstance(platform, PlatformGroup) else build_platform(platform)
    return group.deserialize(data)


# --- platform header ---

def encode_platform_header(descriptor: PlatformDescriptor) -> bytes:
    params = descriptor.params
    return bytes([FAMILY_TAGS[descriptor.family]]) + struct.pack(f">{len(params)}I", *params)


def decode_platform_header(data: bytes, offset: int = 0) -> Tuple[PlatformDescriptor, int]:
    """Decode a platform header at offset; returns (descriptor, next offset)."""
    if offset >= len(data):
        raise ElementDecodeError("truncated platform header")
    family = TAG_FAMILIES.get(data[offset])
    if family is None:
        raise ElementDecodeError(f"unknown platform family tag 0x{data[offset]:02x}")
    count = PARAM_COUNTS[family]
    end = offset + 1 + 4 * count
    if end > len(data):
        raise ElementDecodeError("truncated platform params")
    params = struct.unpack(f">{count}I", data[offset + 1:end])
    try:
        descriptor = PlatformDescriptor(family=family, params=params)
    except ValidationError as e:
        raise ElementDecodeError(f"invalid platform params {params}: {e}") from e
    return descriptor, end
