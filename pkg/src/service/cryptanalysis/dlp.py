"""
Generic discrete logarithm solvers over any platform group.

Both solvers return the least a >= 0 with g^a = h and a < order_bound, or an
unsolved result. Cost is counted in group multiplications; every returned
exponent is rechecked with an (uncounted) exact power before it is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from math import isqrt
from typing import Dict, Optional, Sequence

from src.service.calculus.commutators import simple_commutator
from src.service.groups.base import GroupElement, PlatformGroup
from src.service.groups.platform import same_platform

logger = logging.getLogger(__name__)


class OperationCounter:
    """Group operations routed through one platform, counting multiplications."""

    def __init__(self, group: PlatformGroup):
        self.group = group
        self.count = 0

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self.count += 1
        return self.group.multiply(a, b)

    def power(self, g: GroupElement, exponent: int) -> GroupElement:
        if exponent < 0:
            g = self.group.inverse(g)
            exponent = -exponent
        result = self.group.identity()
        base = g
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base)
            exponent >>= 1
            if exponent:
                base = self.multiply(base, base)
        return result

    def simple_commutator(self, args: Sequence[GroupElement]) -> GroupElement:
        # [a, b] = a^-1 b^-1 a b costs three multiplications
        self.count += 3 * max(0, len(args) - 1)
        return simple_commutator(args)


@dataclass(frozen=True)
class DlpInstance:
    """
    Find a with base^a = target.

    Attributes:
        base: g
        target: h, expected to lie in <g>
        order_bound: Solutions are searched in [0, order_bound)
    """
    base: GroupElement
    target: GroupElement
    order_bound: int

    def __post_init__(self):
        same_platform(self.base, self.target)
        if self.order_bound < 1:
            raise ValueError(f"order_bound must be >= 1, got {self.order_bound}")

    @property
    def group(self) -> PlatformGroup:
        return self.base.group


@dataclass(frozen=True)
class DlpResult:
    exponent: Optional[int]
    operations_count: int
    table_size: int = 0

    @property
    def solved(self) -> bool:
        return self.exponent is not None


def _confirmed(inst: DlpInstance, a: int) -> bool:
    return inst.group.power(inst.base, a) == inst.target


def dlp_bruteforce(inst: DlpInstance) -> DlpResult:
    """Walk g^0, g^1, ... until the target, the bound or a full cycle of <g>."""
    counter = OperationCounter(inst.group)
    identity = inst.group.identity()
    current = identity
    for a in range(inst.order_bound):
        if current == inst.target:
            if not _confirmed(inst, a):
                raise ArithmeticError(f"brute force: g^{a} recheck failed")
            return DlpResult(exponent=a, operations_count=counter.count)
        current = counter.multiply(current, inst.base)
        if current == identity:
            # <g> exhausted without meeting the target
            break
    return DlpResult(exponent=None, operations_count=counter.count)


def dlp_bsgs(inst: DlpInstance) -> DlpResult:
    """
    Baby-step giant-step with m = ceil(sqrt(order_bound)).

    The baby table maps the canonical bytes of g^j (0 <= j < m) to the least
    such j, so the first giant-step hit yields the least exponent.
    """
    group = inst.group
    counter = OperationCounter(group)
    bound = inst.order_bound
    m = isqrt(bound - 1) + 1

    table: Dict[bytes, int] = {}
    current = group.identity()
    for j in range(m):
        table.setdefault(current.to_bytes(), j)
        if j + 1 < m:
            current = counter.multiply(current, inst.base)
    logger.debug(f"BSGS: bound={bound}, m={m}, table size={len(table)}")

    giant = counter.power(group.inverse(inst.base), m)
    gamma = inst.target
    for i in range(m):
        j = table.get(gamma.to_bytes())
        if j is not None:
            a = i * m + j
            if a >= bound:
                break
            if not _confirmed(inst, a):
                raise ArithmeticError(f"BSGS: g^{a} recheck failed")
            return DlpResult(exponent=a, operations_count=counter.count, table_size=len(table))
        if i + 1 < m:
            gamma = counter.multiply(gamma, giant)

    return DlpResult(exponent=None, operations_count=counter.count, table_size=len(table))
