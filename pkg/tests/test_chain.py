import math
from collections import Counter
from fractions import Fraction as F

import numpy as np
import pytest

from jordanlab.chain import (column_projection, exact_column_distribution,
                             exact_distribution, simulate, simulate_columns,
                             transition_law)
from jordanlab.partitions import partitions_of


def test_transition_law_example():
    t = F(1, 2)
    law = {tr.target: tr.prob for tr in transition_law((2, 1), t)}
    assert law == {(3, 1): F(1, 2), (2, 2): F(1, 4), (2, 1, 1): F(1, 4)}


def test_transition_law_from_empty():
    law = transition_law((), F(1, 2))
    assert len(law) == 1 and law[0].target == (1,) and law[0].prob == 1


def test_transition_normalization_exact():
    t = F(1, 3)
    for n in range(0, 16):
        for mu in partitions_of(n):
            assert sum(tr.prob for tr in transition_law(mu, t)) == 1


def test_exact_distribution_examples():
    t = F(1, 2)
    d3 = exact_distribution(3, t)
    assert dict(d3.probs) == {(3,): F(1, 4), (2, 1): F(5, 8), (1, 1, 1): F(1, 8)}
    for n in range(0, 13):
        assert sum(exact_distribution(n, t).probs.values()) == 1


def test_exact_distribution_cap():
    with pytest.raises(ValueError):
        exact_distribution(41, F(1, 2))
    # configurable cap
    d = exact_distribution(12, F(1, 2), cap=12)
    assert sum(d.probs.values()) == 1


def test_column_projection_matches_column_dp():
    t = F(1, 2)
    for n in (3, 6, 10):
        full = exact_distribution(n, t)
        for k in (1, 2, 3):
            proj = column_projection(full, k)
            direct = exact_column_distribution(n, t, k)
            assert dict(proj.probs) == dict(direct.probs)


def test_column_dp_three_step_law():
    # number of parts of the n=3 law: {3: 1/8, 2: 5/8, 1: 1/4}
    d = exact_column_distribution(3, F(1, 2), 1)
    assert dict(d.probs) == {(1,): F(1, 4), (2,): F(5, 8), (3,): F(1, 8)}
    d0 = exact_column_distribution(0, F(1, 2), 1)
    assert dict(d0.probs) == {(0,): 1}


def test_column_dp_reaches_large_n():
    d = exact_column_distribution(60, F(1, 2), 1)
    assert sum(d.probs.values()) == 1


def test_simulate_matches_dp():
    rng = np.random.default_rng(0)
    N = 50000
    counts = Counter(simulate(5, 0.5, rng) for _ in range(N))
    ref = exact_distribution(5, F(1, 2))
    for lam, p in ref.probs.items():
        mean = N * float(p)
        sigma = math.sqrt(N * float(p) * (1 - float(p))) + 1
        assert abs(counts[lam] - mean) < 5 * sigma


def test_simulate_columns_matches_dp():
    rng = np.random.default_rng(1)
    N = 50000
    cols = simulate_columns(6, 0.5, 2, N, rng)
    keys, counts = np.unique(cols, axis=0, return_counts=True)
    emp = {tuple(map(int, key)): c / N for key, c in zip(keys, counts)}
    ref = exact_column_distribution(6, F(1, 2), 2)
    for key, p in ref.probs.items():
        sigma = math.sqrt(float(p) * (1 - float(p)) / N) + 1e-9
        assert abs(emp.get(key, 0.0) - float(p)) < 5 * sigma


def test_simulate_columns_poissonization_invariant():
    # column counts are nonincreasing and sum to at most n
    cols = simulate_columns(12, 0.5, 3, 2000, np.random.default_rng(2))
    assert (cols[:, :-1] >= cols[:, 1:]).all()
    assert (cols.sum(axis=1) <= 12).all()
    assert (cols[:, 0] >= 1).all()


def test_simulate_total_size():
    lam = simulate(25, 0.5, np.random.default_rng(3))
    assert sum(lam) == 25
