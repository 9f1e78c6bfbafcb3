import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fwsubmix import Box, ObjectivePair, ProblemInstance


@pytest.fixture
def unit_box_problem():
    """G(x) = <(1,1), x> over [0,1]^2, no concave part."""

    def build(lam: float = 1.0):
        obj = ObjectivePair(
            dim=2,
            val_g=lambda x: float(x.sum()),
            grad_g=lambda x: np.ones(2),
            val_c=lambda x: 0.0,
            grad_c=lambda x: np.zeros(2),
            lam=lam,
            g_monotone=True,
            g_nonneg=True,
            c_monotone=True,
            c_nonneg=True,
        )
        return ProblemInstance(obj, Box(np.zeros(2), np.ones(2)), 2)

    return build
