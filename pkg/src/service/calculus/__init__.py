"""
Commutator Calculus Module.

- commutators: [a, b], simple and Engel commutators, the maps e and e'
- identities: executable checks of the commutator identities
- certification: lower central series, class / Engel certificates, witnesses
"""

from src.service.calculus.certification import (
    certify_class,
    certify_engel,
    commutator_subgroup,
    diagonal_is_degenerate,
    find_class_witness,
    find_nondegenerate_witness,
    generate_subgroup,
    is_central,
    lower_central_series,
    recheck_class_certificate,
    recheck_engel_certificate,
)
from src.service.calculus.commutators import (
    CommutatorError,
    commutator,
    conjugate,
    engel_commutator,
    multilinear_e,
    multilinear_e_prime,
    simple_commutator,
)
from src.service.calculus.identities import (
    run_identity_suite,
    verify_lemma1,
    verify_multilinear,
    verify_product_form,
    verify_property_1,
    verify_proposition,
)

__all__ = [
    'CommutatorError',
    'certify_class',
    'certify_engel',
    'commutator',
    'commutator_subgroup',
    'conjugate',
    'diagonal_is_degenerate',
    'engel_commutator',
    'find_class_witness',
    'find_nondegenerate_witness',
    'generate_subgroup',
    'is_central',
    'lower_central_series',
    'multilinear_e',
    'multilinear_e_prime',
    'recheck_class_certificate',
    'recheck_engel_certificate',
    'run_identity_suite',
    'simple_commutator',
    'verify_lemma1',
    'verify_multilinear',
    'verify_product_form',
    'verify_property_1',
    'verify_proposition',
]
