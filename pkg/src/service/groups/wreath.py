"""
Z_p wr Z_p as pairs (base vector, shift).

(v, s) * (w, t) = (v + sigma^s w, s + t), where sigma moves the coordinate at
index i to index i + 1 (mod p). Nilpotent of class p, not (p - 1)-Engel.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import random
from typing import Iterator, Sequence, Tuple

from src.models.models import PlatformDescriptor, PlatformFamily
from src.service.groups.base import ElementDecodeError, GroupElement, PlatformError, PlatformGroup
from src.service.groups.modular import Modulus


@dataclass(frozen=True)
class WreathElement(GroupElement):
    base: Tuple[int, ...]
    top: int

    def __post_init__(self):
        p = self.group.p
        if len(self.base) != p:
            raise PlatformError(f"base vector must have {p} coordinates, got {len(self.base)}")
        if not all(0 <= v < p for v in self.base) or not 0 <= self.top < p:
            raise PlatformError(f"coordinates must lie in [0, {p})")

    @property
    def p(self) -> int:
        return self.group.p


def shift(vector: Sequence[int], s: int) -> Tuple[int, ...]:
    """sigma^s: the coordinate at index i lands at index i + s (mod p)."""
    p = len(vector)
    return tuple(vector[(j - s) % p] for j in range(p))


class WreathGroup(PlatformGroup):
    element_type = WreathElement

    def __init__(self, descriptor: PlatformDescriptor):
        if descriptor.family is not PlatformFamily.WREATH:
            raise PlatformError(f"not a wreath descriptor: {descriptor.spec}")
        super().__init__(descriptor)
        (self.p,) = descriptor.params
        self.modulus = Modulus(self.p)
        self._identity = WreathElement(self, (0,) * self.p, 0)

    @property
    def element_size(self) -> int:
        return self.p + 1

    @property
    def order(self) -> int:
        return self.p ** (self.p + 1)

    def identity(self) -> WreathElement:
        return self._identity

    def element(self, base: Sequence[int], top: int = 0) -> WreathElement:
        return WreathElement(self, tuple(v % self.p for v in base), top % self.p)

    def _multiply(self, a: WreathElement, b: WreathElement) -> WreathElement:
        p = self.p
        moved = shift(b.base, a.top)
        return WreathElement(self, tuple((v + w) % p for v, w in zip(a.base, moved)), (a.top + b.top) % p)

    def _inverse(self, a: WreathElement) -> WreathElement:
        p = self.p
        moved = shift(a.base, -a.top)
        return WreathElement(self, tuple(-v % p for v in moved), -a.top % p)

    def _encode(self, g: WreathElement) -> bytes:
        return bytes(g.base) + bytes([g.top])

    def _decode(self, data: bytes) -> WreathElement:
        if any(b >= self.p for b in data):
            raise ElementDecodeError(f"coordinate >= p={self.p} in {data.hex()}")
        return WreathElement(self, tuple(data[:-1]), data[-1])

    def random_element(self, rng: random.Random) -> WreathElement:
        return WreathElement(self, tuple(rng.randrange(self.p) for _ in range(self.p)), rng.randrange(self.p))

    def iter_elements(self) -> Iterator[WreathElement]:
        for top in range(self.p):
            for base in product(range(self.p), repeat=self.p):
                yield WreathElement(self, base, top)
