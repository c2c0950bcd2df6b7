"""Seeded random inputs shared by the CLI and the test-suite.

All streams come from numpy's Philox-4x64 counter-based bit generator, so
a seed fixes every sampled momentum and point.
"""

from __future__ import annotations

import numpy as np

from .planewave import BispinorWave, make_on_shell, solve_amplitude

MASSES = (0.0, 0.5, 1.0, 10.0)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_spatial(rng: np.random.Generator, radius: float = 10.0, min_component: float = 0.0) -> np.ndarray:
    """Uniform point in the ball of ``radius``; every component at least
    ``min_component`` in magnitude when that is positive."""
    while True:
        v = rng.normal(size=3)
        v *= radius * rng.uniform() ** (1 / 3) / np.linalg.norm(v)
        if np.all(np.abs(v) >= min_component) and np.linalg.norm(v) > 1e-3:
            return v


def random_wave(
    rng: np.random.Generator,
    masses=MASSES,
    radius: float = 10.0,
    min_component: float = 0.0,
) -> BispinorWave:
    """On-shell wave with a random mass from ``masses`` and a random mix of
    the two amplitude basis vectors."""
    m = float(masses[rng.integers(len(masses))])
    p = make_on_shell(random_spatial(rng, radius, min_component), m)
    u, v = solve_amplitude(p)
    c = rng.normal(size=2) + 1j * rng.normal(size=2)
    amp = c[0] * u + c[1] * v
    return BispinorWave(p, amp / np.linalg.norm(amp))


def random_points(rng: np.random.Generator, count: int, extent: float = 10.0) -> np.ndarray:
    return rng.uniform(-extent, extent, size=(count, 4))
