"""Shared fixtures: small hand-built texts used across the suite."""

import numpy as np
import pytest

from qtext import validate_text


def uniform_gram(n, z):
    return np.full((n, n), z, dtype=complex) + (1.0 - z) * np.eye(n)


@pytest.fixture
def uniform3():
    # all pairwise overlaps 1/2
    return validate_text(uniform_gram(3, 0.5))


@pytest.fixture
def path3():
    # chain 0-1-2 with the ends orthogonal
    g = np.array([[1.0, 0.5, 0.0],
                  [0.5, 1.0, 0.2],
                  [0.0, 0.2, 1.0]], dtype=complex)
    return validate_text(g)


@pytest.fixture
def two_k2():
    # two disjoint overlapping pairs
    g = np.eye(4, dtype=complex)
    g[0, 1] = g[1, 0] = 0.5
    g[2, 3] = g[3, 2] = 0.5
    return validate_text(g)
