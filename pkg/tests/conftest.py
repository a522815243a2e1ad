from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ordboost import Dataset, Permutation, validate_permutation

# The running example used throughout: four rows over three items with
# targets (1.0, 0.0, 0.9, 0.5); against mu = 0.6 the residuals are
# (0.4, -0.6, 0.3, -0.1).
SPEC_ROWS = [
    ([1, 2, 3], 1.0),
    ([3, 2, 1], 0.0),
    ([2, 1, 3], 0.9),
    ([1, 3, 2], 0.5),
]


@pytest.fixture
def four_rows() -> Dataset:
    return Dataset(3, [(validate_permutation(p, 3), y) for p, y in SPEC_ROWS])


def random_dataset(n: int, m: int, seed: int, targets: str = "uniform") -> Dataset:
    """Seeded dataset of uniform random permutations with random targets."""
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(m):
        perm = Permutation(tuple(int(x) + 1 for x in rng.permutation(n)))
        rows.append(perm)
    if targets == "uniform":
        ys = rng.uniform(-1.0, 1.0, size=m)
    elif targets == "integers":
        ys = rng.integers(-3, 4, size=m).astype(float)
    else:
        raise ValueError(targets)
    return Dataset(n, list(zip(rows, ys)))
