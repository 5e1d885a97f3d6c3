"""Exact residue arithmetic in Z_q."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Modulus:
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"modulus must be >= 2, got {self.q}")

    @property
    def byte_width(self) -> int:
        """Bytes needed to encode q - 1 (at least one)."""
        return max(1, ((self.q - 1).bit_length() + 7) // 8)

    def reduce(self, value: int) -> int:
        return value % self.q

    def residue(self, value: int) -> "Residue":
        return Residue(value % self.q, self)


@dataclass(frozen=True)
class Residue:
    """Canonical residue: 0 <= value < q after every operation."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.q:
            raise ValueError(f"residue {self.value} out of range for q={self.modulus.q}")

    def _coerce(self, other: "Residue | int") -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus.q} vs {other.modulus.q}")
            return other.value
        return other

    def __add__(self, other: "Residue | int") -> "Residue":
        return self.modulus.residue(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: "Residue | int") -> "Residue":
        return self.modulus.residue(self.value - self._coerce(other))

    def __rsub__(self, other: int) -> "Residue":
        return self.modulus.residue(other - self.value)

    def __mul__(self, other: "Residue | int") -> "Residue":
        return self.modulus.residue(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return self.modulus.residue(-self.value)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> "Residue":
        """Multiplicative inverse; raises ValueError when not invertible."""
        try:
            return Residue(pow(self.value, -1, self.modulus.q), self.modulus)
        except ValueError as e:
            raise ValueError(f"{self.value} is not invertible mod {self.modulus.q}") from e

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(self.modulus.byte_width, "big")
