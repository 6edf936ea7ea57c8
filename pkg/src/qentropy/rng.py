"""Seeded random-number plumbing.

Every random constructor in the library draws from a PCG64 generator seeded
explicitly, so results are bit-reproducible across runs and platforms.
Randomized suites fan out one generator per trial with

    trial_seed(master_seed, i) == master_seed XOR i

which keeps trials independent of execution order.
"""

from __future__ import annotations

import numpy as np


def generator(seed: int) -> np.random.Generator:
    """Return the library's named generator (PCG64) for a seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def trial_seed(master_seed: int, trial: int) -> int:
    """Derive the per-trial seed: master XOR trial index."""
    return int(master_seed) ^ int(trial)


def complex_normal(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Standard complex Gaussian entries: (N(0,1) + i N(0,1)) / sqrt(2)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
