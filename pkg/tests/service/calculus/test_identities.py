"""
Tests for the executable commutator identities and the identity suite.
"""

import random

import pytest

from src.service.calculus.commutators import CommutatorError, multilinear_e, multilinear_e_prime
from src.service.calculus.identities import (
    run_identity_suite,
    verify_lemma1,
    verify_multilinear,
    verify_product_form,
    verify_property_1,
    verify_proposition,
)

pytest_plugins = ['tests.service.groups.fixtures', 'tests.service.calculus.fixtures']


class TestProperty1:
    """[xy, z] = [x, z]^y [y, z] and [x, yz] = [x, z][x, y]^z."""

    def test_identity_triple(self, wreath3):
        e = wreath3.identity()
        assert verify_property_1(e, e, e)

    def test_random_triples(self, any_platform):
        rng = random.Random(11)
        for _ in range(1000):
            x, y, z = (any_platform.random_element(rng) for _ in range(3))
            assert verify_property_1(x, y, z)

    def test_fails_on_faulty_product(self, faulty_ut35):
        rng = random.Random(12)
        x, y, z = (faulty_ut35.random_element(rng) for _ in range(3))
        assert not verify_property_1(x, y, z)


class TestLemma1:
    """Tests for verify_lemma1."""

    def test_hand_example(self, ut35):
        """args (I + E12, I + E23), a = 3: both sides are I + 3 E13."""
        assert verify_lemma1([ut35.elementary(1, 2), ut35.elementary(2, 3)], 3)

    def test_exponent_one(self, ut47, rng):
        args = [ut47.random_element(rng) for _ in range(3)]
        assert verify_lemma1(args, 1)

    def test_negative_exponent(self, ut47, rng):
        args = [ut47.random_element(rng) for _ in range(3)]
        assert verify_lemma1(args, -4)

    def test_zero_exponent_is_error(self, ut35):
        with pytest.raises(CommutatorError):
            verify_lemma1([ut35.elementary(1, 2), ut35.elementary(2, 3)], 0)

    def test_weight_below_class_is_error(self, ut47, rng):
        with pytest.raises(CommutatorError):
            verify_lemma1([ut47.random_element(rng), ut47.random_element(rng)], 2)

    def test_single_argument_is_error(self, ut35):
        with pytest.raises(CommutatorError):
            verify_lemma1([ut35.elementary(1, 2)], 2)


class TestProposition:
    """Tests for verify_proposition."""

    def test_every_slot_on_ut47(self, ut47):
        rng = random.Random(13)
        for _ in range(20):
            args = [ut47.random_element(rng) for _ in range(3)]
            for i in (1, 2, 3):
                for a in range(2, 7):
                    assert verify_proposition(args, i, a)

    def test_exponent_one(self, wreath3, rng):
        args = [wreath3.random_element(rng) for _ in range(3)]
        assert verify_proposition(args, 2, 1)

    def test_bad_slot(self, ut35):
        with pytest.raises(CommutatorError):
            verify_proposition([ut35.elementary(1, 2), ut35.elementary(2, 3)], 3, 2)

    def test_zero_exponent(self, ut35):
        with pytest.raises(CommutatorError):
            verify_proposition([ut35.elementary(1, 2), ut35.elementary(2, 3)], 1, 0)


class TestProductForm:
    """[g_1^{a_1}, ..., g_n^{a_n}] = [g_1, ..., g_n]^{a_1 ... a_n}."""

    def test_random_on_ut5(self, ut5_101):
        rng = random.Random(14)
        for _ in range(50):
            args = [ut5_101.random_element(rng) for _ in range(4)]
            exponents = [rng.randint(1, 100) for _ in range(4)]
            assert verify_product_form(args, exponents)

    def test_length_mismatch(self, ut35):
        with pytest.raises(CommutatorError):
            verify_product_form([ut35.elementary(1, 2), ut35.elementary(2, 3)], [1])


class TestMultilinear:
    """Generalized n-linearity of e and e'."""

    def test_e_is_multilinear(self, ut47):
        rng = random.Random(15)
        for _ in range(30):
            args = [ut47.random_element(rng) for _ in range(3)]
            assert verify_multilinear(lambda *gs: multilinear_e(gs), args, [rng.randint(1, 6) for _ in range(3)])

    def test_e_prime_is_multilinear(self, wreath3):
        rng = random.Random(16)
        for _ in range(30):
            x = wreath3.random_element(rng)
            args = [wreath3.random_element(rng) for _ in range(2)]
            assert verify_multilinear(
                lambda *gs: multilinear_e_prime(x, gs), args, [rng.randint(1, 2) for _ in range(2)]
            )


class TestIdentitySuite:
    """Tests for run_identity_suite."""

    @pytest.mark.slow
    def test_suite_passes(self, suite_platform):
        report = run_identity_suite(suite_platform, samples=500, seed=0)

        assert report.ok
        assert report.samples == 500
        for check in report.checks:
            assert check.skipped is None
            assert check.passed == 500
            assert check.failed == 0

    def test_suite_is_deterministic(self, ut47):
        first = run_identity_suite(ut47, samples=20, seed=5)
        second = run_identity_suite(ut47, samples=20, seed=5)
        assert first == second

    def test_abelian_platform_skips(self, ut2_5):
        report = run_identity_suite(ut2_5, samples=10, seed=0)
        checks = {check.name: check for check in report.checks}

        assert report.ok
        assert checks["property_1"].passed == 10
        assert checks["lemma_1"].skipped is not None

    def test_fault_injection_is_detected(self, faulty_ut35):
        report = run_identity_suite(faulty_ut35, samples=50, seed=0)
        checks = {check.name: check for check in report.checks}

        assert not report.ok
        assert checks["property_1"].failed == 50
