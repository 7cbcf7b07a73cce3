"""Seeded random streams.

Every generator in the package is a numpy ``Generator`` over the Philox
counter-based bit generator, keyed by a :class:`numpy.random.SeedSequence`
built from ``(seed, *stream_index)``.  Philox output is fixed by the numpy
stream-compatibility policy, so reports are reproducible across platforms,
and per-trial streams are independent of the order in which trials run.
"""

import numpy as np


def make_rng(seed: int, *stream) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed) & ((1 << 64) - 1), spawn_key=tuple(int(i) for i in stream))
    return np.random.Generator(np.random.Philox(ss))


def as_rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return make_rng(seed_or_rng)


def complex_normal(rng: np.random.Generator, shape=()) -> np.ndarray:
    """Standard circular complex Gaussian samples (unit variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def sample_points(n: int = 8) -> np.ndarray:
    """Fixed pseudo-random parameter values inside the disc of radius 0.8."""
    rng = make_rng(0x5EED, n)
    r = 0.8 * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return r * np.exp(1j * theta)


DEFAULT_SAMPLES = sample_points(8)
