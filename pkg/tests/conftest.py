import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_primitive(rng, dim=2):
    """Physical random primitive 5-vector with moderate Mach numbers."""
    from gks.gas import primitive_state
    return primitive_state(rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0),
                           rng.uniform(-1.0, 1.0) if dim == 2 else 0.0,
                           rng.uniform(0.3, 2.0))
