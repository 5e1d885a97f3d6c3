"""
Commutators and the commutator multilinear maps.

Conventions: [a, b] = a^-1 b^-1 a b, conjugation a^y = y^-1 a y, and simple
commutators are left-normed: [g_1, ..., g_n] = [[g_1, ..., g_{n-1}], g_n].
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from src.service.groups.base import GroupElement
from src.service.groups.platform import same_platform

logger = logging.getLogger(__name__)


class CommutatorError(Exception):
    """Raised on invalid commutator arguments (empty lists, bad arity, zero exponents)."""
    pass


def conjugate(a: GroupElement, y: GroupElement) -> GroupElement:
    """a^y = y^-1 a y."""
    group = same_platform(a, y)
    return group.multiply(group.multiply(group.inverse(y), a), y)


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """[a, b] = a^-1 b^-1 a b."""
    group = same_platform(a, b)
    return group.multiply(
        group.multiply(group.inverse(a), group.inverse(b)),
        group.multiply(a, b),
    )


def simple_commutator(args: Sequence[GroupElement]) -> GroupElement:
    """Left-normed commutator; a single argument is returned as is."""
    if not args:
        raise CommutatorError("simple commutator needs at least one argument")
    result = args[0]
    for g in args[1:]:
        result = commutator(result, g)
    return result


def engel_commutator(x: GroupElement, g: GroupElement, n: int) -> GroupElement:
    """[x,_n g] = [x, g, ..., g] with n trailing copies of g."""
    if n < 1:
        raise CommutatorError(f"Engel commutator length must be >= 1, got {n}")
    return simple_commutator([x] + [g] * n)


def multilinear_e(args: Sequence[GroupElement], arity: Optional[int] = None) -> GroupElement:
    """e(g_1, ..., g_n) = [g_1, ..., g_n] on a class-n platform."""
    if not args:
        raise CommutatorError("e needs arguments")
    expected = arity if arity is not None else args[0].group.descriptor.claimed_class
    if len(args) != expected:
        raise CommutatorError(f"e expects {expected} arguments, got {len(args)}")
    return simple_commutator(args)


def multilinear_e_prime(
    x: GroupElement,
    args: Sequence[GroupElement],
    arity: Optional[int] = None,
) -> GroupElement:
    """e'(g_1, ..., g_{n-1}) = [x, g_1, ..., g_{n-1}] with x fixed."""
    expected = arity if arity is not None else x.group.descriptor.claimed_class - 1
    if len(args) != expected:
        raise CommutatorError(f"e' expects {expected} arguments, got {len(args)}")
    return simple_commutator([x, *args])
