"""
Class and Engel certification, lower central series and non-degeneracy witnesses.

Exhaustive mode enumerates the group (tiny platforms only) and computes the
lower central series by generator closure; sampled mode checks seeded random
commutators and is evidence, not proof.
"""

from __future__ import annotations

from collections import deque
import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.constants import DEFAULT_SAMPLES, EXHAUSTIVE_WITNESS_LIMIT, WITNESS_BUDGET
from src.models.models import (
    CertificateMode,
    CertificateStatus,
    ClassCertificate,
    EngelCertificate,
    EngelVerdict,
)
from src.service.calculus.commutators import (
    CommutatorError,
    commutator,
    engel_commutator,
    simple_commutator,
)
from src.service.calculus.sampling import trial_rng
from src.service.groups.base import ElementDecodeError, GroupElement, PlatformGroup

logger = logging.getLogger(__name__)

Subgroup = FrozenSet[GroupElement]


# --- subgroups and the lower central series ---

def generate_subgroup(group: PlatformGroup, generators: Iterable[GroupElement]) -> Subgroup:
    """Closure of the generators under multiplication (finite groups only)."""
    gens = list(set(generators))
    identity = group.identity()
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in gens:
            product = group.multiply(current, g)
            if product not in seen:
                seen.add(product)
                queue.append(product)
    return frozenset(seen)


def commutator_subgroup(
    group: PlatformGroup,
    left: Iterable[GroupElement],
    right: Iterable[GroupElement],
) -> Subgroup:
    """[X, Y] = <[x, y] : x in X, y in Y>."""
    right = list(right)
    return generate_subgroup(group, {commutator(x, y) for x in left for y in right})


def lower_central_series(group: PlatformGroup) -> List[Subgroup]:
    """gamma_1 = G, gamma_{k+1} = [gamma_k, G], until {1} or the series stabilises."""
    elements = group.elements()
    series = [frozenset(elements)]
    while len(series[-1]) > 1:
        following = commutator_subgroup(group, series[-1], elements)
        if following == series[-1]:
            logger.warning(f"{group.descriptor.spec}: lower central series stabilised above {{1}}")
            break
        series.append(following)
        logger.debug(f"{group.descriptor.spec}: |gamma_{len(series)}| = {len(following)}")
    return series


def is_central(group: PlatformGroup, subset: Iterable[GroupElement]) -> bool:
    elements = group.elements()
    return all(group.multiply(z, g) == group.multiply(g, z) for z in subset for g in elements)


# --- witnesses ---

def find_class_witness(
    group: PlatformGroup,
    weight: int,
    seed: int,
    budget: int = WITNESS_BUDGET,
) -> Optional[Tuple[GroupElement, ...]]:
    """Seeded search for a non-trivial simple commutator of the given weight."""
    for trial in range(budget):
        rng = trial_rng(seed, trial)
        args = tuple(group.random_element(rng) for _ in range(weight))
        if not simple_commutator(args).is_identity():
            return args
    return None


def find_nondegenerate_witness(
    group: PlatformGroup,
    n: int,
    budget: int = WITNESS_BUDGET,
    seed: int = 0,
) -> Optional[Tuple[GroupElement, GroupElement]]:
    """
    Find (x, g) with [x,_{n-1} g] != 1, making e'(g, ..., g) non-degenerate.

    Small platforms are scanned exhaustively in enumeration order; larger ones
    get `budget` seeded random trials. Returns None when nothing is found.
    """
    if n < 2:
        raise CommutatorError(f"e' needs n >= 2, got {n}")
    k = n - 1
    if group.order <= EXHAUSTIVE_WITNESS_LIMIT:
        elements = group.elements()
        for x in elements:
            for g in elements:
                if not engel_commutator(x, g, k).is_identity():
                    return x, g
        return None

    for trial in range(budget):
        rng = trial_rng(seed, trial)
        x, g = group.random_element(rng), group.random_element(rng)
        if not engel_commutator(x, g, k).is_identity():
            logger.debug(f"{group.descriptor.spec}: non-Engel witness after {trial + 1} trials")
            return x, g
    return None


def _encode_all(elements: Sequence[GroupElement]) -> List[bytes]:
    return [g.to_bytes() for g in elements]


# --- certification ---

def certify_class(
    group: PlatformGroup,
    exhaustive: bool = False,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ClassCertificate:
    """
    Check the platform's claimed class c.

    Exhaustive: gamma_{c+1} = {1} and gamma_c != {1} via the full series.
    Sampled: `samples` random weight-(c+1) commutators are trivial.
    Both modes attach a weight-c witness. A failed claim is reported as a
    refuted certificate, not raised.
    """
    descriptor = group.descriptor
    claimed = descriptor.claimed_class
    common = dict(platform=descriptor, class_upper=claimed, seed=seed)

    def refuted(reason: str, counterexample: Sequence[GroupElement] = (), **extra) -> ClassCertificate:
        logger.warning(f"{descriptor.spec}: class {claimed} refuted: {reason}")
        return ClassCertificate(
            **common, **extra, status=CertificateStatus.REFUTED, reason=reason,
            counterexample=_encode_all(counterexample),
        )

    if exhaustive:
        extra = dict(mode=CertificateMode.EXHAUSTIVE)
        series = lower_central_series(group)
        orders = [len(term) for term in series]
        extra["series_orders"] = orders
        if orders[-1] != 1:
            return refuted(f"group is not nilpotent (series orders {orders})", **extra)
        computed = len(series) - 1
        if computed != claimed:
            return refuted(f"lower central series gives class {computed}", **extra)
        extra["last_term_central"] = is_central(group, series[-2]) if len(series) > 1 else True
    else:
        extra = dict(mode=CertificateMode.SAMPLED, samples=samples)
        for trial in range(samples):
            rng = trial_rng(seed, trial)
            args = [group.random_element(rng) for _ in range(claimed + 1)]
            if not simple_commutator(args).is_identity():
                return refuted(f"non-trivial weight-{claimed + 1} commutator", args, **extra)

    witness = find_class_witness(group, claimed, seed)
    if witness is None:
        return refuted(f"no non-trivial weight-{claimed} commutator found", **extra)

    logger.info(f"{descriptor.spec}: class {claimed} confirmed ({extra['mode'].value})")
    return ClassCertificate(**common, **extra, class_witness=_encode_all(witness))


def certify_engel(
    group: PlatformGroup,
    k: int,
    exhaustive: bool = False,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> EngelCertificate:
    """Decide (exhaustive) or sample whether [x,_k g] = 1 for all x, g."""
    if k < 1:
        raise CommutatorError(f"Engel length must be >= 1, got {k}")
    descriptor = group.descriptor

    if exhaustive:
        mode = dict(mode=CertificateMode.EXHAUSTIVE, seed=None)
        elements = group.elements()
        pairs = ((x, g) for x in elements for g in elements)
    else:
        mode = dict(mode=CertificateMode.SAMPLED, samples=samples, seed=seed)

        def sampled_pairs():
            for trial in range(samples):
                rng = trial_rng(seed, trial)
                yield group.random_element(rng), group.random_element(rng)

        pairs = sampled_pairs()

    for x, g in pairs:
        if not engel_commutator(x, g, k).is_identity():
            logger.info(f"{descriptor.spec}: not {k}-Engel ({mode['mode'].value})")
            return EngelCertificate(
                platform=descriptor, k=k, verdict=EngelVerdict.NOT_K_ENGEL,
                witness=_encode_all((x, g)), **mode,
            )

    logger.info(f"{descriptor.spec}: {k}-Engel ({mode['mode'].value})")
    return EngelCertificate(platform=descriptor, k=k, verdict=EngelVerdict.IS_K_ENGEL, **mode)


def recheck_class_certificate(group: PlatformGroup, certificate: ClassCertificate) -> bool:
    """Re-evaluate the recorded witness (and counterexample, when refuted)."""
    if certificate.platform != group.descriptor:
        return False
    try:
        if certificate.confirmed:
            witness = [group.deserialize(b) for b in certificate.class_witness]
            return len(witness) == certificate.class_upper and not simple_commutator(witness).is_identity()
        if certificate.counterexample:
            counterexample = [group.deserialize(b) for b in certificate.counterexample]
            return not simple_commutator(counterexample).is_identity()
    except ElementDecodeError:
        return False
    return True


def recheck_engel_certificate(group: PlatformGroup, certificate: EngelCertificate) -> bool:
    if certificate.platform != group.descriptor:
        return False
    if certificate.verdict is EngelVerdict.IS_K_ENGEL:
        return True
    try:
        x, g = (group.deserialize(b) for b in certificate.witness)
    except ElementDecodeError:
        return False
    return not engel_commutator(x, g, certificate.k).is_identity()


def diagonal_is_degenerate(group: PlatformGroup, n: int, samples: int, seed: int = 0) -> bool:
    """Sampled evidence that e(g, ..., g) = 1: [g, g] is always trivial for n >= 2."""
    for trial in range(samples):
        g = group.random_element(trial_rng(seed, trial))
        if not simple_commutator([g] * n).is_identity():
            return False
    return True
