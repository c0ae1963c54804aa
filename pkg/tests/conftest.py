import itertools

import hypothesis
import pytest

from dynsubmod.oracle import MaxCutObjective

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("ci")


def cut_by_edge_scan(edges, A):
    """Independent Max-Cut oracle: scan the raw edge list."""
    A = set(A)
    return sum(1 for u, v in edges if (u in A) != (v in A))


def leibniz_det(M):
    """Independent determinant oracle by permutation expansion (tiny n only)."""
    n = len(M)
    total = 0.0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1.0
        for i in range(n):
            prod *= M[i][perm[i]]
        total += (-1) ** inv * prod
    return total


@pytest.fixture
def triangle():
    return MaxCutObjective(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return MaxCutObjective(3, [(0, 1), (1, 2)])
