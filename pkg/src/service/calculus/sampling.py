from __future__ import annotations

import random


def trial_seed(seed: int, trial: int) -> int:
    """Per-trial seed, so trials can run in any order (or in parallel) with the same result."""
    return seed * 2**32 + trial


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(trial_seed(seed, trial))


def nonzero_exponent(rng: random.Random, q: int, signed: bool = True) -> int:
    """Exponent in [1, q - 1], optionally with a random sign."""
    a = rng.randint(1, q - 1)
    if signed and rng.random() < 0.5:
        return -a
    return a
