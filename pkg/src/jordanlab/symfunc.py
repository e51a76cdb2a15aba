"""Hall-Littlewood and q-Whittaker branching coefficients and specializations.

Covers the two Macdonald degenerations used here: Hall-Littlewood skew
branching weights psi/phi (parameter t, second Macdonald parameter 0),
q-Whittaker polynomials evaluated by interlacing-chain enumeration, and
the Plancherel / single-alpha specializations of the dual Hall-Littlewood
polynomials Q.
"""

from __future__ import annotations

import math
from itertools import product as iproduct

from .partitions import Partition, Signature, as_partition, interlaces, multiplicity
from .qseries import qbinomial


def hl_psi(lam: Partition, mu: Partition, t):
    """Hall-Littlewood psi_{lam/mu}: product of (1 - t^{m_i(mu)}) over rows i
    where the multiplicity drops by one from mu to lam; 0 unless mu interlaces lam."""
    if not interlaces(mu, lam):
        return 0
    out = 1
    for i in set(mu):
        if multiplicity(mu, i) == multiplicity(lam, i) + 1:
            out *= 1 - t ** multiplicity(mu, i)
    return out


def hl_phi(lam: Partition, mu: Partition, t):
    """Hall-Littlewood phi_{lam/mu}: like hl_psi but with the roles of lam
    and mu swapped in the multiplicity condition."""
    if not interlaces(mu, lam):
        return 0
    out = 1
    for i in set(lam):
        if multiplicity(lam, i) == multiplicity(mu, i) + 1:
            out *= 1 - t ** multiplicity(lam, i)
    return out


def qw_psi(lam: Signature, mu: Signature, t):
    """q-Whittaker branching weight for signatures, len(mu) == len(lam) - 1.

    Product of Gaussian binomials [lam_i - lam_{i+1} choose lam_i - mu_i]_t;
    invariant under a joint shift of lam and mu.
    """
    if len(mu) != len(lam) - 1:
        raise ValueError("qw_psi needs len(mu) == len(lam) - 1")
    if not interlaces(mu, lam):
        return 0
    out = 1
    for i in range(len(mu)):
        out *= qbinomial(lam[i] - lam[i + 1], lam[i] - mu[i], t)
    return out


def _chains_down(lam: Signature):
    """All interlacing chains lam^(1) < lam^(2) < ... < lam^(k) = lam with
    lam^(i) a signature of length i.  Yields the full chain as a tuple."""
    k = len(lam)
    if k == 1:
        yield (lam,)
        return
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(k - 1)]
    for mu in iproduct(*ranges):
        for chain in _chains_down(mu):
            yield chain + (lam,)


def qwhittaker_terms(lam: Signature, t) -> list[tuple[complex, tuple[int, ...]]]:
    """Monomial expansion of P_lam(x_1..x_k; t, 0) as (coefficient, exponents).

    The signature is shifted so its last entry is 0 before enumerating
    chains; the shift is restored on the exponents.
    """
    k = len(lam)
    if k < 1:
        raise ValueError("signature must have length >= 1")
    if any(lam[i] < lam[i + 1] for i in range(k - 1)):
        raise ValueError(f"not a signature: {lam}")
    shift = lam[-1]
    base = tuple(x - shift for x in lam)
    terms: list[tuple[complex, tuple[int, ...]]] = []
    for chain in _chains_down(base):
        coeff = 1
        exps = []
        prev_size = 0
        for i, level in enumerate(chain):
            size = sum(level)
            exps.append(size - prev_size + shift)
            prev_size = size
            if i > 0:
                coeff *= qw_psi(level, chain[i - 1], t)
        if coeff != 0:
            terms.append((coeff, tuple(exps)))
    return terms


def qwhittaker_P(lam: Signature, x, t):
    """Evaluate P_lam(x_1..x_k; t, 0), x a sequence of scalars or arrays."""
    x = tuple(x)
    if len(x) != len(lam):
        raise ValueError("need one variable per signature entry")
    total = 0
    for coeff, exps in qwhittaker_terms(lam, t):
        mono = coeff
        for xi, e in zip(x, exps):
            mono = mono * xi ** e
        total = total + mono
    return total


_CHAIN_WEIGHT_CACHE: dict = {}


def _standard_chain_weight(lam: Partition, t):
    """Sum over single-box growth chains empty -> lam of the product of
    Hall-Littlewood phi weights, via DP over the sublattice of lam."""
    key = (lam, t)
    if key in _CHAIN_WEIGHT_CACHE:
        return _CHAIN_WEIGHT_CACHE[key]
    if not lam:
        return 1
    total = 0
    for i in range(len(lam)):
        if i == len(lam) - 1 or lam[i] > lam[i + 1]:
            nu = as_partition(lam[:i] + (lam[i] - 1,) + lam[i + 1:])
            total += hl_phi(lam, nu, t) * _standard_chain_weight(nu, t)
    _CHAIN_WEIGHT_CACHE[key] = total
    return total


def hl_Q_gamma(lam: Partition, tau, t):
    """Dual Hall-Littlewood Q_lam under the Plancherel specialization gamma(tau).

    Computed as (tau/(1-t))^n / n! times the phi-weighted count of
    single-box growth chains, n = |lam|.  This chain form is the D -> infinity
    limit of the |lam|-box terms of Q_lam in D equal alpha variables; it is
    cross-checked against the Cauchy kernel in the test suite.
    """
    n = sum(lam)
    if n == 0:
        return 1
    w = _standard_chain_weight(tuple(lam), t)
    return (tau / (1 - t)) ** n * w / math.factorial(n)


def _interlacing_below(lam: Partition):
    """All partitions nu with nu interlacing below lam (lam/nu a horizontal strip)."""
    k = len(lam)
    if k == 0:
        yield ()
        return
    ranges = [range(lam[i + 1] if i + 1 < k else 0, lam[i] + 1) for i in range(k)]
    for nu in iproduct(*ranges):
        yield as_partition(nu)


def hl_Q_gamma_alpha1(lam: Partition, tau, t):
    """Q_lam under the combined specialization gamma(tau) + one alpha parameter 1.

    Branches over nu interlacing below lam: sum of phi_{lam/nu} * Q_nu(gamma(tau)).
    """
    lam = tuple(lam)
    total = 0
    for nu in _interlacing_below(lam):
        total += hl_phi(lam, nu, t) * hl_Q_gamma(nu, tau, t)
    return total
