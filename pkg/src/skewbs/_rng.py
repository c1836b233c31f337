"""Seed and generator handling shared by the sampling routines."""

from __future__ import annotations

import numpy as np


def as_generator(seed=None) -> np.random.Generator:
    """Return a numpy Generator; passes Generators through untouched."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
