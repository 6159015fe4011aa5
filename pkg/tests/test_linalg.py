import itertools
import random

import numpy as np
import pytest

from frobpow.linalg import rank_mod, row_echelon_mod, solve_mod


def rank_oracle(A, p):
    """Unblocked textbook elimination, kept independent of the library path."""
    rows = [[int(v) % p for v in r] for r in A]
    m = len(rows[0]) if rows else 0
    r = col = 0
    while r < len(rows) and col < m:
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        for i in range(r + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
    return r


@pytest.mark.parametrize("p", [2, 3, 7, 101, 32749, 65537])
def test_rank_matches_oracle_random(p):
    rng = random.Random(p)
    for _ in range(40):
        n, m = rng.randint(1, 10), rng.randint(1, 10)
        A = [[rng.randrange(p) for _ in range(m)] for _ in range(n)]
        block = rng.choice([1, 2, 3, 128])
        assert rank_mod(np.array(A), p, block=block) == rank_oracle(A, p)


def test_blocked_equals_unblocked_on_larger_matrix():
    rng = np.random.default_rng(5)
    for p in (2, 7):
        A = rng.integers(0, p, size=(80, 120))
        assert rank_mod(A, p, block=16) == rank_mod(A, p, block=1)
        assert rank_mod(A, p, block=16) == rank_oracle(A.tolist(), p)


def test_solve_recovers_consistent_system():
    rng = random.Random(1)
    for p in (2, 3, 7, 32749):
        for _ in range(30):
            n, m = rng.randint(1, 8), rng.randint(1, 8)
            A = np.array([[rng.randrange(p) for _ in range(m)] for _ in range(n)])
            x0 = np.array([rng.randrange(p) for _ in range(m)])
            b = (A @ x0) % p
            x = solve_mod(A, b, p, block=rng.choice([1, 2, 128]))
            assert x is not None
            assert ((A @ x.astype(np.int64)) % p == b).all()


def test_solve_detects_inconsistency():
    p = 5
    A = np.array([[1, 2], [2, 4]])  # rank 1
    b = np.array([1, 3])  # not in the column span
    assert solve_mod(A, b, p) is None
    assert solve_mod(A, np.array([1, 2]), p) is not None


def test_solve_zero_matrix():
    p = 3
    A = np.zeros((3, 2), dtype=int)
    assert solve_mod(A, np.array([0, 1, 0]), p) is None
    x = solve_mod(A, np.zeros(3, dtype=int), p)
    assert x is not None and (x == 0).all()


def test_rank_invariant_under_permutation():
    rng = np.random.default_rng(9)
    for p in (2, 7):
        A = rng.integers(0, p, size=(12, 17))
        base = rank_mod(A, p)
        for _ in range(3):
            B = A[rng.permutation(12)][:, rng.permutation(17)]
            assert rank_mod(B, p) == base


def test_echelon_pivots_deterministic():
    p = 7
    A = np.array([[0, 1, 2], [3, 0, 1], [3, 1, 3]])
    M = A.copy()
    pivots = row_echelon_mod(M, p)
    assert pivots == [0, 1]  # row 3 = row1 + row2, rank 2
    M2 = A.copy()
    assert row_echelon_mod(M2, p) == pivots
    assert (M == M2).all()


def test_exhaustive_tiny_over_f2():
    # every 3x3 matrix over F_2: rank against the oracle
    for bits in itertools.product((0, 1), repeat=9):
        A = [list(bits[0:3]), list(bits[3:6]), list(bits[6:9])]
        assert rank_mod(np.array(A), 2, block=2) == rank_oracle(A, 2)
