import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


def random_matrix(rng, m, n, rank=None, decay=0.0):
    """Dense test matrix, optionally with exact rank or singular-value decay."""
    if rank is None:
        return rng.standard_normal((m, n))
    u, _ = np.linalg.qr(rng.standard_normal((m, rank)))
    v, _ = np.linalg.qr(rng.standard_normal((n, rank)))
    sigma = np.exp(-decay * np.arange(rank)) if decay else np.ones(rank)
    return (u * sigma) @ v.T
