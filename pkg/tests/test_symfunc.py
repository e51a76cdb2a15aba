import math
from fractions import Fraction as F
from itertools import product

from hypothesis import given, settings, strategies as st

from jordanlab.partitions import interlaces, partitions_of
from jordanlab.symfunc import (hl_phi, hl_psi, hl_Q_gamma, hl_Q_gamma_alpha1,
                               qw_psi, qwhittaker_P, qwhittaker_terms)

small_partitions = st.lists(st.integers(1, 6), max_size=5).map(
    lambda xs: tuple(sorted(xs, reverse=True)))


def hl_P(lam, xs, t):
    """Finite-variable Hall-Littlewood P via the interlacing branching rule;
    independent of the package's generating-function shortcuts."""
    lam = tuple(lam)
    if len(lam) > len(xs):
        return 0.0

    def below(mu):
        mu = list(mu)
        if not mu:
            yield ()
            return
        ranges = [range(mu[i + 1] if i + 1 < len(mu) else 0, mu[i] + 1)
                  for i in range(len(mu))]
        seen = set()
        for c in product(*ranges):
            nu = tuple(x for x in c if x)
            if tuple(sorted(c, reverse=True)) == tuple(c) and nu not in seen:
                seen.add(nu)
                yield nu

    def rec(mu, m):
        if m == 0:
            return 1.0 if not mu else 0.0
        total = 0.0
        for nu in below(mu):
            w = hl_psi(mu, nu, t)
            if w:
                total += w * xs[m - 1] ** (sum(mu) - sum(nu)) * rec(nu, m - 1)
        return total

    return rec(lam, len(xs))


def test_hl_branching_values():
    t = F(1, 2)
    # adding a box to a part of multiplicity m in mu contributes (1 - t^m)
    assert hl_phi((1,), (), t) == 1 - t
    assert hl_phi((1, 1), (1,), t) == 1 - t ** 2
    assert hl_phi((2,), (1,), t) == 1 - t
    assert hl_phi((2, 1), (1, 1), t) == 1 - t
    assert hl_phi((2,), (), t) == 1 - t  # (2)/() is a horizontal strip
    assert hl_phi((2, 2), (), t) == 0  # not interlacing
    # psi has a factor (1 - t^{m_i(mu)}) where mu's multiplicity exceeds lam's
    assert hl_psi((2, 1), (2,), t) == 1
    assert hl_psi((2,), (1,), t) == 1 - t
    assert hl_psi((2, 1), (1, 1), t) == 1 - t ** 2
    assert hl_psi((2, 2), (2,), t) == 1
    assert hl_psi((2, 1), (1,), t) == 1


def test_hl_psi_phi_zero_when_not_interlacing():
    for n in range(7):
        for lam in partitions_of(n):
            for m in range(n):
                for mu in partitions_of(m):
                    if not interlaces(mu, lam):
                        assert hl_psi(lam, mu, F(1, 3)) == 0
                        assert hl_phi(lam, mu, F(1, 3)) == 0


def test_qw_psi_branching():
    t = F(1, 2)
    # product of q-binomials [lam_i - lam_{i+1} choose lam_i - mu_i]
    assert qw_psi((3, 1), (2,), t) == F(3, 2)  # [2 choose 1]_t = 1 + t
    assert qw_psi((2, 0), (1,), t) == 1 + t
    assert qw_psi((2, 0), (3,), t) == 0


def test_qwhittaker_monomial_cases():
    # single row: P_(m)(x;t,0) = sum over interlacings = complete homogeneous-like
    t = 0.5
    assert abs(qwhittaker_P((2,), [0.3], t) - 0.09) < 1e-15
    # single variable: P_lam(x) = x^{|lam|} when lam has one part
    assert abs(qwhittaker_P((3,), [0.7], t) - 0.7 ** 3) < 1e-15


@given(small_partitions, st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_qwhittaker_shift_covariance(lam, d):
    # appending d to every part multiplies by (x1...xk)^d
    t = 0.5
    xs = [0.3, 0.25, 0.2][: max(len(lam), 1)]
    lam = lam + (0,) * (len(xs) - len(lam)) if len(lam) < len(xs) else lam[: len(xs)]
    lifted = tuple(p + d for p in lam)
    a = qwhittaker_P(lifted, xs, t)
    b = math.prod(xs) ** d * qwhittaker_P(lam, xs, t)
    assert abs(a - b) < 1e-12 * max(1.0, abs(a))


@given(small_partitions)
@settings(max_examples=30, deadline=None)
def test_qwhittaker_symmetry(lam):
    t = 0.4
    xs = [0.31, 0.17, 0.23]
    lam = (lam + (0, 0, 0))[:3]
    lam = tuple(sorted(lam, reverse=True))
    vals = {qwhittaker_P(lam, list(perm), t)
            for perm in [(xs[0], xs[1], xs[2]), (xs[2], xs[0], xs[1]),
                         (xs[1], xs[2], xs[0])]}
    assert max(vals) - min(vals) < 1e-13


def test_qwhittaker_terms_total_degree():
    # every monomial has total degree |lam|
    lam = (3, 1, 0)
    for coeff, exps in qwhittaker_terms(lam, 0.5):
        assert sum(exps) == sum(lam)


def test_hl_Q_gamma_small_exact():
    t, tau = F(2, 5), F(7, 10)
    assert hl_Q_gamma((), tau, t) == 1
    assert hl_Q_gamma((1,), tau, t) == tau
    assert hl_Q_gamma((2,), tau, t) == tau ** 2 / 2
    assert hl_Q_gamma((1, 1), tau, t) == tau ** 2 * (1 + t) / 2


def test_hl_Q_gamma_cauchy_kernel():
    # sum_lam Q_lam(plancherel(tau)) P_lam(x; 0, t) = e^{tau * sum(x)}
    t, tau = 0.4, 0.7
    xs = [0.3, 0.2]
    total = sum(hl_Q_gamma(lam, tau, t) * hl_P(lam, xs, t)
                for d in range(14) for lam in partitions_of(d))
    assert abs(total - math.exp(tau * sum(xs))) < 1e-8


def test_hl_Q_gamma_alpha1_cauchy_kernel():
    # extra alpha-variable 1 multiplies the kernel by prod (1-t x)/(1-x)
    t, tau = 0.4, 0.5
    xs = [0.25, 0.15]
    total = sum(hl_Q_gamma_alpha1(lam, tau, t) * hl_P(lam, xs, t)
                for d in range(15) for lam in partitions_of(d))
    ref = math.exp(tau * sum(xs)) * math.prod((1 - t * x) / (1 - x) for x in xs)
    assert abs(total - ref) < 1e-8


def test_hl_phi_totality_along_growth():
    # phi over all single-box additions equals the growth normalization:
    # sum_{lam: mu interlaces lam, |lam|=|mu|+1} of the chain weights stays finite
    t = F(1, 2)
    mu = (2, 1)
    ups = [(3, 1), (2, 2), (2, 1, 1)]
    vals = [hl_phi(lam, mu, t) for lam in ups]
    assert all(v > 0 for v in vals)
