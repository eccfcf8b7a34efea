"""Seeded random streams.

All randomness comes from numpy's PCG64 bit generator keyed through a
SeedSequence. A batch seed plus a trial index selects an independent stream
(``SeedSequence(seed, spawn_key=(index,))``), so a trial draws the same
numbers whether it runs first, last, serially or in a worker process.
"""
from __future__ import annotations

import numpy as np

SEED_BITS = 64


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    if not 0 <= seed < 2**SEED_BITS:
        raise ValueError(f"seed must fit in {SEED_BITS} unsigned bits")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(stream))))


def draw_int(rng: np.random.Generator, low: int, high: int) -> int:
    """Uniform integer in the closed range [low, high]."""
    return int(rng.integers(low, high, endpoint=True))


def draw_entries(rng: np.random.Generator, count: int, p: int) -> tuple[int, ...]:
    return tuple(int(x) for x in rng.integers(0, p, size=count))
