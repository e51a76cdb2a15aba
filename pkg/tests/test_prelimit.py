import math
from fractions import Fraction as F

import pytest

from jordanlab.chain import exact_column_distribution
from jordanlab.prelimit import (TorusQuad, poissonized_pmf_integral,
                                prelimit_pmf_integral, residue_E)


def test_prelimit_k1_matches_dp():
    t = 0.5
    for n in (3, 6, 10):
        dp = exact_column_distribution(n, F(1, 2), 1)
        for eta in range(0, n + 1):
            got = prelimit_pmf_integral(n, 1, t, (eta,)).value
            assert abs(got - float(dp[(eta,)])) < 1e-8


def test_prelimit_trivial_cases():
    assert prelimit_pmf_integral(0, 1, 0.5, (0,)).value == pytest.approx(1, abs=1e-10)
    assert prelimit_pmf_integral(3, 1, 0.5, (7,)).value == 0.0
    assert prelimit_pmf_integral(1, 1, 0.5, (1,)).value == pytest.approx(1, abs=1e-10)


def test_prelimit_k2_matches_dp():
    t = 0.5
    for n in (3, 6, 10):
        dp = exact_column_distribution(n, F(1, 2), 2)
        for eta, ref in dp.probs.items():
            got = prelimit_pmf_integral(n, 2, t, eta).value
            assert abs(got - float(ref)) < 1e-7


def test_radius_independence():
    vals = [prelimit_pmf_integral(10, 2, 0.5, (3, 2), TorusQuad(radius=c)).value
            for c in (1.1, 1.5, 2.0)]
    assert max(vals) - min(vals) < 1e-9


def test_quadrature_rejects_unit_radius():
    with pytest.raises(ValueError):
        TorusQuad(radius=1.0)


def test_poissonization_round_trip():
    # Poisson(tau/(1-t)) mixture of fixed-size laws equals the
    # continuous-time marginal
    tau, t = 3.0, 0.5
    rate = tau / (1 - t)
    mix: dict = {}
    for n in range(0, 61):
        w = math.exp(-rate) * rate ** n / math.factorial(n)
        for key, p in exact_column_distribution(n, F(1, 2), 1).probs.items():
            mix[key] = mix.get(key, 0.0) + w * float(p)
    for eta in range(0, 12):
        got = poissonized_pmf_integral(tau, 1, t, (eta,)).value
        assert abs(got - mix.get((eta,), 0.0)) < 1e-8


def test_residue_k1_closed_form():
    t = F(1, 2)
    assert residue_E(2, (1,), 1, 1, t) == 1
    assert residue_E(5, (2,), 0, 1, t) == 0       # (1 - t^0)^n = 0
    assert residue_E(3, (1,), 5, 1, t) == 0       # v > eta_k
    # exact rational arithmetic
    val = residue_E(3, (2,), 1, 1, t)
    assert isinstance(val, F)
    assert val == (1 - t) ** 3 * (-1) ** 3 * t ** (1 - 2) * (1 + t) / ((1 - t) * (1 - t ** 2))


def test_residue_decay():
    # with eta(n) = L + round(log2 n), |E| is < 1e-6 by n = 50
    for v in (1, 2):
        tail = []
        for n in (50, 64, 80, 100):
            eta = (1 + round(math.log2(n)),)
            tail.append(abs(residue_E(n, eta, v, 1, 0.5)))
        assert all(x < 1e-6 for x in tail)
        # decreasing along the stretch where round(log2 n) is constant
        assert tail[0] >= tail[1] >= tail[2]


def test_residue_k2_quadrature_is_real_and_stable():
    a = residue_E(4, (2, 1), 1, 2, 0.5, TorusQuad(nodes=64))
    b = residue_E(4, (2, 1), 1, 2, 0.5, TorusQuad(nodes=128))
    assert abs(a - b) < 1e-8
