"""
Tests for the brute-force and baby-step giant-step DLP solvers.
"""

import math
import random

import pytest

from src.models.models import PlatformDescriptor
from src.service.cryptanalysis.dlp import DlpInstance, OperationCounter, dlp_bruteforce, dlp_bsgs
from src.service.groups.base import PlatformMismatchError
from src.service.groups.platform import build_platform

pytest_plugins = ['tests.service.cryptanalysis.fixtures']


class TestDlpInstance:
    """Tests for DlpInstance validation."""

    def test_bound_must_be_positive(self, ut3_101):
        g = ut3_101.elementary(1, 3)
        with pytest.raises(ValueError):
            DlpInstance(base=g, target=g, order_bound=0)

    def test_platforms_must_match(self, ut3_101):
        other = build_platform(PlatformDescriptor.wreath(3))
        with pytest.raises(PlatformMismatchError):
            DlpInstance(base=ut3_101.elementary(1, 3), target=other.identity(), order_bound=10)


class TestBruteForce:
    """Tests for dlp_bruteforce."""

    def test_identity_target(self, ut3_101):
        g = ut3_101.elementary(1, 2, 7)
        assert dlp_bruteforce(DlpInstance(g, ut3_101.identity(), 101)).exponent == 0

    def test_target_is_base(self, ut3_101):
        g = ut3_101.elementary(1, 2, 7)
        assert dlp_bruteforce(DlpInstance(g, g, 101)).exponent == 1

    def test_central_example(self, ut3_101):
        """g = I + E13, h = I + 57 E13 gives a = 57."""
        result = dlp_bruteforce(DlpInstance(ut3_101.elementary(1, 3), ut3_101.elementary(1, 3, 57), 101))

        assert result.solved
        assert result.exponent == 57
        assert result.operations_count == 57

    def test_bound_exceeded(self, ut3_101):
        result = dlp_bruteforce(DlpInstance(ut3_101.elementary(1, 3), ut3_101.elementary(1, 3, 57), 50))
        assert not result.solved

    def test_outside_subgroup(self, ut3_101):
        """The walk stops once <g> cycles back to the identity."""
        result = dlp_bruteforce(DlpInstance(ut3_101.elementary(1, 3), ut3_101.elementary(1, 2), 10_000))

        assert not result.solved
        assert result.operations_count == 101


class TestBabyStepGiantStep:
    """Tests for dlp_bsgs."""

    def test_central_example(self, ut3_101):
        result = dlp_bsgs(DlpInstance(ut3_101.elementary(1, 3), ut3_101.elementary(1, 3, 57), 101))
        assert result.exponent == 57
        assert result.table_size == 11

    def test_trivial_cases(self, ut3_101):
        g = ut3_101.from_upper([3, 4, 5])
        assert dlp_bsgs(DlpInstance(g, ut3_101.identity(), 1)).exponent == 0
        assert dlp_bsgs(DlpInstance(g, g, 2)).exponent == 1

    def test_outside_subgroup(self, ut3_101):
        result = dlp_bsgs(DlpInstance(ut3_101.elementary(1, 3), ut3_101.elementary(1, 2), 101))
        assert not result.solved

    def test_solution_beyond_bound(self, ut3_101):
        result = dlp_bsgs(DlpInstance(ut3_101.elementary(1, 3), ut3_101.elementary(1, 3, 57), 50))
        assert not result.solved

    @pytest.mark.slow
    def test_agrees_with_bruteforce(self):
        """200 instances with bound <= 2^16 on UT(3, 4093) and Z_5 wr Z_5."""
        rng = random.Random(2024)
        platforms = [
            build_platform(PlatformDescriptor.unitriangular(3, 4093)),
            build_platform(PlatformDescriptor.wreath(5)),
        ]
        for i in range(200):
            group = platforms[i % 2]
            g = group.random_element(rng)
            bound = rng.randint(1, 2 ** 16)
            if rng.random() < 0.8:
                h = group.power(g, rng.randrange(bound))
            else:
                h = group.random_element(rng)
            inst = DlpInstance(g, h, bound)
            brute, bsgs = dlp_bruteforce(inst), dlp_bsgs(inst)

            assert brute.exponent == bsgs.exponent
            if bsgs.solved:
                assert group.power(g, bsgs.exponent) == h

    @pytest.mark.slow
    def test_31_bit_bound(self, ut3_big):
        """Central element over q = 2^31 - 1: at most 3 sqrt(B) multiplications."""
        bound = ut3_big.q
        g = ut3_big.elementary(1, 3, 1)
        a = 1_234_567_890
        result = dlp_bsgs(DlpInstance(g, ut3_big.power(g, a), bound))

        assert result.exponent == a
        assert result.operations_count <= 3 * math.sqrt(bound)


class TestOperationCounter:
    """Tests for the multiplication counter."""

    def test_power_counts_square_and_multiply(self, ut3_101):
        counter = OperationCounter(ut3_101)
        g = ut3_101.from_upper([1, 2, 3])

        assert counter.power(g, 8) == ut3_101.power(g, 8)
        # three squarings, one multiply into the identity
        assert counter.count == 4

    def test_commutator_cost(self, ut3_101):
        counter = OperationCounter(ut3_101)
        counter.simple_commutator([ut3_101.elementary(1, 2), ut3_101.elementary(2, 3)])
        assert counter.count == 3
