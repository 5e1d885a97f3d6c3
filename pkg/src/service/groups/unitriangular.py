"""
UT(m, q): upper unitriangular m x m matrices over Z_q.

The group is nilpotent of class m - 1. Entries are kept as canonical ints in
[0, q); only the strictly upper part carries information.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import random
from typing import Iterator, Sequence, Tuple

from src.models.models import PlatformDescriptor, PlatformFamily
from src.service.groups.base import ElementDecodeError, GroupElement, PlatformError, PlatformGroup
from src.service.groups.modular import Modulus, Residue

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class UTMatrix(GroupElement):
    rows: Rows

    def __post_init__(self):
        m = len(self.rows)
        q = self.group.modulus.q
        for i, row in enumerate(self.rows):
            if len(row) != m:
                raise PlatformError(f"row {i} has length {len(row)}, expected {m}")
            for j, value in enumerate(row):
                if j < i and value != 0:
                    raise PlatformError(f"entry ({i}, {j}) below the diagonal must be 0")
                if j == i and value != 1:
                    raise PlatformError(f"diagonal entry ({i}, {i}) must be 1")
                if not 0 <= value < q:
                    raise PlatformError(f"entry ({i}, {j}) = {value} out of range for q={q}")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def modulus(self) -> Modulus:
        return self.group.modulus

    def entry(self, i: int, j: int) -> Residue:
        """0-based entry accessor."""
        return Residue(self.rows[i][j], self.modulus)

    def band(self, d: int) -> Tuple[int, ...]:
        """Entries (i, i + d) of superdiagonal band d."""
        return tuple(self.rows[i][i + d] for i in range(self.dim - d))

    def first_nonzero_band(self) -> int | None:
        for d in range(1, self.dim):
            if any(self.band(d)):
                return d
        return None

    def upper(self) -> Tuple[int, ...]:
        """Strictly upper entries in row-major order."""
        return tuple(self.rows[i][j] for i in range(self.dim) for j in range(i + 1, self.dim))


class UnitriangularGroup(PlatformGroup):
    element_type = UTMatrix

    def __init__(self, descriptor: PlatformDescriptor):
        if descriptor.family is not PlatformFamily.UNITRIANGULAR:
            raise PlatformError(f"not a unitriangular descriptor: {descriptor.spec}")
        super().__init__(descriptor)
        self.m, q = descriptor.params
        self.modulus = Modulus(q)
        self._identity = UTMatrix(self, tuple(
            tuple(1 if i == j else 0 for j in range(self.m)) for i in range(self.m)
        ))

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def upper_count(self) -> int:
        return self.m * (self.m - 1) // 2

    @property
    def element_size(self) -> int:
        return self.upper_count * self.modulus.byte_width

    @property
    def order(self) -> int:
        return self.q ** self.upper_count

    def identity(self) -> UTMatrix:
        return self._identity

    def from_upper(self, values: Sequence[int]) -> UTMatrix:
        """Build a matrix from its strictly upper entries in row-major order."""
        if len(values) != self.upper_count:
            raise PlatformError(f"expected {self.upper_count} upper entries, got {len(values)}")
        it = iter(values)
        rows = []
        for i in range(self.m):
            rows.append(tuple(
                0 if j < i else 1 if j == i else next(it) % self.q for j in range(self.m)
            ))
        return UTMatrix(self, tuple(rows))

    def elementary(self, i: int, j: int, value: int = 1) -> UTMatrix:
        """I + value * E_ij with 1-based indices, i < j."""
        if not 1 <= i < j <= self.m:
            raise PlatformError(f"elementary matrix needs 1 <= i < j <= {self.m}, got ({i}, {j})")
        rows = [list(row) for row in self._identity.rows]
        rows[i - 1][j - 1] = value % self.q
        return UTMatrix(self, tuple(tuple(row) for row in rows))

    def _multiply(self, a: UTMatrix, b: UTMatrix) -> UTMatrix:
        m, q = self.m, self.q
        ar, br = a.rows, b.rows
        rows = []
        for i in range(m):
            row = [0] * m
            row[i] = 1
            for j in range(i + 1, m):
                row[j] = sum(ar[i][k] * br[k][j] for k in range(i, j + 1)) % q
            rows.append(tuple(row))
        return UTMatrix(self, tuple(rows))

    def _inverse(self, a: UTMatrix) -> UTMatrix:
        # back substitution on A X = I, unit diagonal
        m, q = self.m, self.q
        ar = a.rows
        x = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        for i in range(m - 2, -1, -1):
            for j in range(i + 1, m):
                x[i][j] = -sum(ar[i][k] * x[k][j] for k in range(i + 1, j + 1)) % q
        return UTMatrix(self, tuple(tuple(row) for row in x))

    def _encode(self, g: UTMatrix) -> bytes:
        width = self.modulus.byte_width
        return b"".join(v.to_bytes(width, "big") for v in g.upper())

    def _decode(self, data: bytes) -> UTMatrix:
        width = self.modulus.byte_width
        values = []
        for offset in range(0, len(data), width):
            value = int.from_bytes(data[offset:offset + width], "big")
            if value >= self.q:
                raise ElementDecodeError(f"entry {value} >= q={self.q}")
            values.append(value)
        return self.from_upper(values)

    def random_element(self, rng: random.Random) -> UTMatrix:
        return self.from_upper([rng.randrange(self.q) for _ in range(self.upper_count)])

    def iter_elements(self) -> Iterator[UTMatrix]:
        for values in product(range(self.q), repeat=self.upper_count):
            yield self.from_upper(values)
