import random
from fractions import Fraction

import pytest

from dysonct.linalg import _MODULAR_THRESHOLD, solve_nullspace


def test_identity_has_trivial_nullspace():
    assert solve_nullspace([[1, 0], [0, 1]]) == []


def test_single_equation_kernel():
    assert solve_nullspace([[1, 1]]) == [(1, -1)]


def test_rank_one_matrix():
    basis = solve_nullspace([[1, 2], [2, 4]])
    assert len(basis) == 1
    # canonical scaling: primitive integers, first nonzero positive
    assert basis[0] == (2, -1)


def test_fraction_entries():
    rows = [[Fraction(1, 2), Fraction(1, 3)]]
    (vec,) = solve_nullspace(rows)
    assert Fraction(1, 2) * vec[0] + Fraction(1, 3) * vec[1] == 0


def test_zero_matrix_gives_full_basis():
    basis = solve_nullspace([[0, 0, 0]])
    assert len(basis) == 3


def test_random_exactness_small():
    rng = random.Random(3)
    for _ in range(20):
        rows = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(rng.randint(2, 8))]
        basis = solve_nullspace(rows)
        for vec in basis:
            for row in rows:
                assert sum(Fraction(x) * v for x, v in zip(row, vec)) == 0


def test_modular_path_recovers_known_kernel():
    # enough columns to trigger the modular strategy; kernel built by design
    rng = random.Random(5)
    cols = _MODULAR_THRESHOLD + 12
    w = [rng.randint(-50, 50) for _ in range(cols - 1)]
    rows = []
    for _ in range(cols + 6):
        lead = [rng.randint(-1000, 1000) for _ in range(cols - 1)]
        last = -sum(l * x for l, x in zip(lead, w))
        rows.append(lead + [last])
    basis = solve_nullspace(rows)
    assert len(basis) == 1
    vec = basis[0]
    for row in rows:
        assert sum(Fraction(x) * v for x, v in zip(row, vec)) == 0
    # proportional to (w, 1)
    scale = vec[-1]
    assert scale != 0
    assert all(v == scale * wi for v, wi in zip(vec, w))


def test_modular_path_trivial_nullspace():
    rng = random.Random(9)
    cols = _MODULAR_THRESHOLD + 5
    rows = [[rng.randint(-1000, 1000) for _ in range(cols)] for _ in range(cols + 8)]
    assert solve_nullspace(rows) == []


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        solve_nullspace([[1, 2], [1]])
