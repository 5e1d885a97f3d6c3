"""
Executable checks of the commutator identities behind the multilinear maps.

Every check returns a bool rather than raising on a false identity, so the
suites can count failures (and the fault-injection tests can observe them).
"""

from __future__ import annotations

from functools import reduce
import logging
import operator
from typing import Callable, Sequence

from src.models.models import IdentityCheck, IdentitySuiteReport
from src.service.calculus.commutators import (
    CommutatorError,
    commutator,
    conjugate,
    multilinear_e_prime,
    simple_commutator,
)
from src.service.calculus.sampling import nonzero_exponent, trial_rng
from src.service.groups.base import GroupElement, PlatformGroup
from src.service.groups.platform import same_platform

logger = logging.getLogger(__name__)


def _require_nonzero(a: int) -> None:
    if a == 0:
        raise CommutatorError("exponent must be a nonzero integer")


def _require_weight(args: Sequence[GroupElement]) -> PlatformGroup:
    if len(args) < 2:
        raise CommutatorError(f"identity needs at least 2 arguments, got {len(args)}")
    group = args[0].group
    for g in args[1:]:
        same_platform(args[0], g)
    if group.descriptor.claimed_class > len(args):
        raise CommutatorError(
            f"{group.descriptor.spec} has class {group.descriptor.claimed_class} > weight {len(args)}"
        )
    return group


def verify_property_1(x: GroupElement, y: GroupElement, z: GroupElement) -> bool:
    """[xy, z] = [x, z]^y [y, z] and [x, yz] = [x, z] [x, y]^z."""
    group = same_platform(x, y)
    same_platform(y, z)
    left = commutator(group.multiply(x, y), z) == group.multiply(conjugate(commutator(x, z), y), commutator(y, z))
    right = commutator(x, group.multiply(y, z)) == group.multiply(commutator(x, z), conjugate(commutator(x, y), z))
    return left and right


def verify_lemma1(args: Sequence[GroupElement], a: int) -> bool:
    """[[g_1..g_{n-1}]^a, g_n] = [g_1..g_n]^a = [g_1..g_{n-1}, g_n^a]."""
    _require_nonzero(a)
    group = _require_weight(args)
    expected = group.power(simple_commutator(args), a)
    prefix = group.power(simple_commutator(args[:-1]), a)
    first = commutator(prefix, args[-1]) == expected
    second = simple_commutator([*args[:-1], group.power(args[-1], a)]) == expected
    return first and second


def verify_proposition(args: Sequence[GroupElement], i: int, a_i: int) -> bool:
    """[g_1, ..., g_i^{a_i}, ..., g_n] = [g_1, ..., g_n]^{a_i}, i is 1-based."""
    _require_nonzero(a_i)
    group = _require_weight(args)
    if not 1 <= i <= len(args):
        raise CommutatorError(f"slot {i} outside 1..{len(args)}")
    powered = list(args)
    powered[i - 1] = group.power(args[i - 1], a_i)
    return simple_commutator(powered) == group.power(simple_commutator(args), a_i)


def verify_product_form(args: Sequence[GroupElement], exponents: Sequence[int]) -> bool:
    """[g_1^{a_1}, ..., g_n^{a_n}] = [g_1, ..., g_n]^{a_1 ... a_n}."""
    if len(exponents) != len(args):
        raise CommutatorError(f"{len(args)} arguments but {len(exponents)} exponents")
    for a in exponents:
        _require_nonzero(a)
    group = _require_weight(args)
    powered = [group.power(g, a) for g, a in zip(args, exponents)]
    product = reduce(operator.mul, exponents, 1)
    return simple_commutator(powered) == group.power(simple_commutator(args), product)


def verify_multilinear(
    mapping: Callable[..., GroupElement],
    args: Sequence[GroupElement],
    exponents: Sequence[int],
) -> bool:
    """Generalized n-linearity: map(g_1^{a_1}, ...) = map(g_1, ...)^{a_1 ... a_n}."""
    if len(exponents) != len(args):
        raise CommutatorError(f"{len(args)} arguments but {len(exponents)} exponents")
    group = args[0].group
    powered = [group.power(g, a) for g, a in zip(args, exponents)]
    product = reduce(operator.mul, exponents, 1)
    return mapping(*powered) == group.power(mapping(*args), product)


def run_identity_suite(group: PlatformGroup, samples: int, seed: int) -> IdentitySuiteReport:
    """Run every identity check on `samples` seeded random instances."""
    n = group.descriptor.claimed_class
    q = group.characteristic
    checks = {name: IdentityCheck(name=name) for name in (
        "property_1", "lemma_1", "proposition", "product_form", "e_prime_multilinear",
    )}

    def record(name: str, ok: bool) -> None:
        check = checks[name]
        if ok:
            check.passed += 1
        else:
            check.failed += 1

    if n < 2:
        reason = f"class {n} platform: the identities need class > 1"
        for name in ("lemma_1", "proposition", "product_form", "e_prime_multilinear"):
            checks[name].skipped = reason

    for trial in range(samples):
        rng = trial_rng(seed, trial)
        x, y, z = (group.random_element(rng) for _ in range(3))
        record("property_1", verify_property_1(x, y, z))
        if n < 2:
            continue

        args = [group.random_element(rng) for _ in range(n)]
        record("lemma_1", verify_lemma1(args, nonzero_exponent(rng, q)))
        record("proposition", all(
            verify_proposition(args, i, nonzero_exponent(rng, q)) for i in range(1, n + 1)
        ))
        record("product_form", verify_product_form(args, [nonzero_exponent(rng, q) for _ in range(n)]))

        base = group.random_element(rng)
        tail = [group.random_element(rng) for _ in range(n - 1)]
        record("e_prime_multilinear", verify_multilinear(
            lambda *gs: multilinear_e_prime(base, gs, arity=n - 1),
            tail,
            [nonzero_exponent(rng, q) for _ in range(n - 1)],
        ))

    report = IdentitySuiteReport(
        platform=group.descriptor.spec, samples=samples, seed=seed, checks=list(checks.values())
    )
    for check in report.checks:
        if check.failed:
            logger.warning(f"{group.descriptor.spec}: {check.name} failed {check.failed}/{samples}")
    logger.info(f"Identity suite on {group.descriptor.spec}: ok={report.ok}")
    return report
