"""
Abstract platform group interface.

Every other layer (commutator calculus, protocols, attacks) works against
PlatformGroup and GroupElement only; the concrete families live in
unitriangular.py and wreath.py.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
import logging
import random
from typing import ClassVar, Iterator, List

from src.constants import EXHAUSTIVE_LIMIT
from src.models.models import PlatformDescriptor

logger = logging.getLogger(__name__)


class PlatformError(Exception):
    """Raised when a platform cannot be built or an element is invalid."""
    pass


class PlatformMismatchError(PlatformError):
    """Raised when elements of different platforms are combined."""
    pass


class ElementDecodeError(PlatformError):
    """Raised when element bytes are malformed or out of range."""
    pass


@dataclass(frozen=True)
class GroupElement:
    """Immutable group element bound to the platform that created it."""

    group: "PlatformGroup" = field(compare=False, repr=False)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def __invert__(self) -> "GroupElement":
        return self.group.inverse(self)

    def __pow__(self, exponent: int) -> "GroupElement":
        return self.group.power(self, exponent)

    def is_identity(self) -> bool:
        return self == self.group.identity()

    def to_bytes(self) -> bytes:
        return self.group.serialize(self)


class PlatformGroup(ABC):
    """
    Exact arithmetic for one platform instance.

    Subclasses implement the raw operations (_multiply, _inverse, _encode,
    _decode); the public methods add platform checks so mixing elements of
    different platforms fails loudly.
    """

    element_type: ClassVar[type]

    def __init__(self, descriptor: PlatformDescriptor):
        self.descriptor = descriptor

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor.spec})"

    @property
    def characteristic(self) -> int:
        return self.descriptor.characteristic

    # --- raw operations ---

    @abstractmethod
    def identity(self) -> GroupElement:
        pass

    @abstractmethod
    def _multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        pass

    @abstractmethod
    def _inverse(self, a: GroupElement) -> GroupElement:
        pass

    @abstractmethod
    def _encode(self, g: GroupElement) -> bytes:
        pass

    @abstractmethod
    def _decode(self, data: bytes) -> GroupElement:
        pass

    @property
    @abstractmethod
    def element_size(self) -> int:
        """Length in bytes of the canonical encoding."""

    @property
    @abstractmethod
    def order(self) -> int:
        pass

    @abstractmethod
    def random_element(self, rng: random.Random) -> GroupElement:
        pass

    @abstractmethod
    def iter_elements(self) -> Iterator[GroupElement]:
        pass

    # --- checked operations ---

    def check(self, element: GroupElement) -> None:
        """Raise PlatformMismatchError unless element belongs to this platform."""
        if not isinstance(element, self.element_type):
            raise PlatformMismatchError(
                f"{type(element).__name__} is not an element of {self.descriptor.spec}"
            )
        if element.group is not self and element.group.descriptor != self.descriptor:
            raise PlatformMismatchError(
                f"element of {element.group.descriptor.spec} used with {self.descriptor.spec}"
            )

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self.check(a)
        self.check(b)
        return self._multiply(a, b)

    def inverse(self, a: GroupElement) -> GroupElement:
        self.check(a)
        return self._inverse(a)

    def power(self, g: GroupElement, exponent: int) -> GroupElement:
        """Square-and-multiply; negative exponents go through the inverse."""
        self.check(g)
        if exponent < 0:
            g = self.inverse(g)
            exponent = -exponent
        result = self.identity()
        base = g
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base)
            exponent >>= 1
            if exponent:
                base = self.multiply(base, base)
        return result

    def serialize(self, g: GroupElement) -> bytes:
        self.check(g)
        return self._encode(g)

    def deserialize(self, data: bytes) -> GroupElement:
        if len(data) != self.element_size:
            raise ElementDecodeError(
                f"expected {self.element_size} bytes for {self.descriptor.spec}, got {len(data)}"
            )
        return self._decode(bytes(data))

    def elements(self) -> List[GroupElement]:
        """Enumerate the whole group (small platforms only)."""
        if self.order > EXHAUSTIVE_LIMIT:
            raise PlatformError(
                f"{self.descriptor.spec} has order {self.order}, above the exhaustive limit {EXHAUSTIVE_LIMIT}"
            )
        return list(self.iter_elements())
