import numpy as np
import pytest

from wnncondense import Dataset


def random_dataset(rng, n=None, dim=2, n_classes=2):
    """Random labeled dataset with every class present at least once."""
    if n is None:
        n = int(rng.integers(4, 30))
    coords = rng.normal(size=(n, dim))
    while True:
        labels = rng.integers(0, n_classes, size=n)
        if len(np.unique(labels)) == n_classes:
            break
    return Dataset(coords, labels)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
