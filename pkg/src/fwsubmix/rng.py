"""Seeded random streams.

All randomness in the package flows through Philox (4x64, 10 rounds), a
counter-based generator that other language runtimes can reproduce.  A
stream is addressed by ``(seed, index)``; the Philox key is the 96-bit
integer ``seed * 2**32 + index``.  Uniform draws use NumPy's half-open
``[low, high)`` convention.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Return the generator for stream ``index`` of ``seed``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be non-negative")
    return np.random.Generator(np.random.Philox(key=(int(seed) << 32) + int(index)))
