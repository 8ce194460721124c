import random

import numpy as np
import pytest

from tropfactor import _kernels as k

backends = ["numpy"] + (["numba"] if k.BACKEND == "numba" else [])


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


@pytest.mark.parametrize("backend", backends)
def test_int_matmul(backend):
    rng = random.Random(0)
    for _ in range(30):
        n, m, p = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 6)
        a, b = random_matrix(rng, n, m), random_matrix(rng, m, p)
        want = [[sum(a[i][t] * b[t][j] for t in range(m)) for j in range(p)] for i in range(n)]
        assert k.int_matmul(a, b, backend) == want


@pytest.mark.parametrize("backend", backends)
def test_big_entries_stay_exact(backend):
    a = [[2**40, 3], [1, -(2**45)]]
    b = [[2**30, 1], [5, 2**33]]
    want = [[2**70 + 15, 2**40 + 3 * 2**33], [2**30 - 5 * 2**45, 1 - 2**78]]
    assert k.int_matmul(a, b, backend) == want


def test_empty_product():
    assert k.int_matmul([], [[1, 2]]) == []
    assert k.int_matmul([[]], []) == [[]]


def brute_pairs(z, pos, neg, min_common):
    out = []
    for i in pos:
        for j in neg:
            common = z[i] & z[j]
            if common.sum() < min_common:
                continue
            if all(r in (i, j) or not np.all(z[r][common]) for r in range(len(z))):
                out.append((i, j))
    return out


@pytest.mark.parametrize("backend", backends)
def test_adjacent_pairs(backend):
    rng = np.random.default_rng(5)
    for _ in range(40):
        z = rng.random((8, 6)) < 0.5
        idx = list(range(8))
        pos, neg = idx[:3], idx[3:]
        assert k.adjacent_pairs(z, pos, neg, 2, backend) == brute_pairs(z, pos, neg, 2)
    assert k.adjacent_pairs(np.ones((2, 2), bool), [], [1], 1, backend) == []


@pytest.mark.parametrize("backend", backends)
def test_tie_mask(backend):
    vals = [[1, 3, 3], [-2, -5, -2], [7, 0, 0]]
    want = [[False, True, True], [True, False, True], [True, False, False]]
    assert k.tie_mask(vals, backend).tolist() == want
    big = [[2**70, 2**70, 1]]
    assert k.tie_mask(big, backend).tolist() == [[True, True, False]]


def test_backends_agree():
    if k.BACKEND != "numba":
        pytest.skip("numba not installed")
    rng = random.Random(2)
    a, b = random_matrix(rng, 7, 5, -99, 99), random_matrix(rng, 5, 4, -99, 99)
    assert k.int_matmul(a, b, "numba") == k.int_matmul(a, b, "numpy")
