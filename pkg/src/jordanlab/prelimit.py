"""Exact torus-contour formulas for finite-n column marginals.

For the discrete-time partition process, the probability that the first k
conjugate parts equal a given eta has an exact integral representation over
the k-fold torus of radius c > 1: trapezoidal quadrature of an analytic
periodic integrand converges geometrically in the node count.  The
Poissonized variant replaces the (1 + sum z)^n radial factor with an
exponential.  residue_E evaluates the residues picked up when the torus is
shrunk through the poles at z = -t^v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

import numpy as np

from .limitlaw import Estimate, NonconvergenceError, _qpoch_inf_arr
from .qseries import qbinomial, qpochhammer, qpochhammer_inf
from .symfunc import qwhittaker_terms


@dataclass(frozen=True)
class TorusQuad:
    """Trapezoid rule on the torus of given radius; node counts double from
    `nodes` until the value stabilizes or `max_doublings` is exhausted."""

    radius: float = 1.5
    nodes: int = 64
    max_doublings: int = 6

    def __post_init__(self):
        if self.radius <= 1:
            raise ValueError("torus radius must exceed 1")


def _as_weak_partition(eta, k: int) -> tuple[int, ...]:
    eta = tuple(eta)
    if len(eta) != k:
        raise ValueError("eta must have length k")
    if any(e < 0 for e in eta) or any(a < b for a, b in zip(eta, eta[1:])):
        raise ValueError(f"not a weakly decreasing nonnegative tuple: {eta}")
    return eta


def _torus_value_k1(radial, t: float, eta1: int, quad: TorusQuad,
                    nodes: int) -> complex:
    # One variable: the j-sum collapses by the q-binomial theorem to
    # z^{-eta} (-t^{eta+1}/z;t)_inf / (-1/z;t)_inf.
    m = np.arange(nodes)
    z = quad.radius * np.exp(2j * math.pi * m / nodes)
    zi = 1.0 / z
    val = (radial(z) * t ** (eta1 * (eta1 - 1) // 2) * zi ** eta1
           * _qpoch_inf_arr(-t ** (eta1 + 1) * zi, t)
           / _qpoch_inf_arr(-zi, t))
    return complex(np.mean(val))


def _torus_value_k2(radial, t: float, eta, quad: TorusQuad,
                    nodes: int) -> complex:
    m = np.arange(nodes)
    z = quad.radius * np.exp(2j * math.pi * m / nodes)
    zi = 1.0 / z
    z1 = z[:, None]
    z2 = z[None, :]
    f = radial(z1 + z2)
    f = f * _qpoch_inf_arr(z1 / z2, t) * _qpoch_inf_arr(z2 / z1, t)
    denom = _qpoch_inf_arr(-zi, t)
    f = f / (denom[:, None] * denom[None, :])
    gap = eta[0] - eta[1]
    jsum = np.zeros_like(f)
    for j in range(gap + 1):
        coef = (t ** (j * (eta[1] + 1) + j * (j - 1) // 2)
                * qbinomial(gap, j, t))
        poly = np.zeros_like(f)
        for cf, exps in qwhittaker_terms((eta[0], eta[1] + j), t):
            poly = poly + cf * np.outer(zi ** exps[0], zi ** exps[1])
        jsum = jsum + coef * poly
    f = f * jsum
    pref = (qpochhammer_inf(t, t, tol=1e-17).value
            * t ** sum(e * (e - 1) // 2 for e in eta)
            / (2 * qpochhammer(t, t, gap)))
    return pref * complex(np.mean(f))


def _torus_integral(radial, k: int, t: float, eta, quad: TorusQuad,
                    tol: float) -> Estimate:
    if k > 2:
        raise ValueError("torus quadrature here is limited to k <= 2")
    evaluate = _torus_value_k1 if k == 1 else _torus_value_k2
    arg = eta[0] if k == 1 else eta
    nodes = quad.nodes
    prev = None
    for _ in range(quad.max_doublings + 1):
        value = evaluate(radial, t, arg, quad, nodes)
        if prev is not None and abs(value - prev) < tol / 2:
            return Estimate(float(value.real), abs(value - prev))
        prev = value
        nodes *= 2
    raise NonconvergenceError("torus quadrature did not converge",
                              abs(value - prev))


def prelimit_pmf_integral(n: int, k: int, t: float, eta,
                          quad: TorusQuad | None = None,
                          tol: float = 1e-10) -> Estimate:
    """Pr(first k conjugate parts = eta) after n growth steps, by contour
    quadrature; exact in n, no truncation of the state space."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    eta = _as_weak_partition(eta, k)
    if quad is None:
        quad = TorusQuad()
    if eta[0] > n:
        return Estimate(0.0, 0.0)
    return _torus_integral(lambda s: (1 + s) ** n, k, t, eta, quad, tol)


def poissonized_pmf_integral(tau: float, k: int, t: float, eta,
                             quad: TorusQuad | None = None,
                             tol: float = 1e-10) -> Estimate:
    """Same marginal for the continuous-time chain run for time tau, i.e.
    the Poisson(tau/(1-t)) mixture over n of the discrete marginals."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    eta = _as_weak_partition(eta, k)
    if quad is None:
        quad = TorusQuad()
    rate = tau / (1 - t)
    return _torus_integral(lambda s: np.exp(rate * s), k, t, eta, quad, tol)


def residue_E(n: int, eta, v: int, k: int, t,
              quad: TorusQuad | None = None, tol: float = 1e-10):
    """Residue of the k-fold torus integrand at z_k = -t^v.

    k=1 is a closed form, exact when t is a Fraction; k>=2 is evaluated by
    (k-1)-dimensional unit-torus quadrature.
    """
    eta = _as_weak_partition(eta, k)
    if v < 0:
        raise ValueError("v must be nonnegative")
    if k == 1:
        ek = eta[0]
        if v > ek:
            return 0 * t if isinstance(t, Fraction) else 0.0
        sign = -1 if (ek + v) % 2 else 1
        tpow = t ** (v * (v - 1) // 2 + ek * (ek - 1) // 2 - v * ek)
        return ((1 - t ** v) ** n * sign * tpow * qbinomial(ek, v, t)
                / qpochhammer(t, t, ek))
    if k > 3:
        raise ValueError("residue quadrature is limited to k <= 3")
    if quad is None:
        quad = TorusQuad()
    t = float(t)

    mu_ranges = [range(eta[i + 1], eta[i] + 1) for i in range(k - 1)]
    mu_list = []
    for mu in iproduct(*mu_ranges):
        w = 1.0
        for i in range(k - 1):
            w *= qbinomial(eta[i] - eta[i + 1], eta[i] - mu[i], t)
        w *= qpochhammer(t ** (eta[k - 1] - v + 1), t, mu[k - 2] - eta[k - 1])
        w *= (-t ** (-v)) ** (sum(eta) - sum(mu))
        mu_list.append((mu, w))

    pref = ((-1) ** v * qpochhammer_inf(t, t, tol=1e-17).value ** (k - 2)
            * t ** (v * (v - 1) // 2)
            * t ** sum(e * (e - 1) // 2 for e in eta)
            / (math.factorial(k) * qpochhammer(t, t, v)))
    for i in range(k - 1):
        pref /= qpochhammer(t, t, eta[i] - eta[i + 1])

    nodes = quad.nodes
    prev = None
    for _ in range(quad.max_doublings + 1):
        value = _residue_torus_value(n, v, k, t, mu_list, nodes)
        if prev is not None and abs(value - prev) < tol / 2:
            return float((pref * value).real)
        prev = value
        nodes *= 2
    raise NonconvergenceError("residue quadrature did not converge",
                              abs(pref) * abs(value - prev))


def _residue_torus_value(n: int, v: int, k: int, t: float, mu_list,
                         nodes: int) -> complex:
    m = np.arange(nodes)
    z = np.exp(2j * math.pi * m / nodes)
    zi = 1.0 / z
    per_var = ((1 + t ** (-v) * z) * z ** v * t ** (-(v * v + v) // 2)
               * _qpoch_inf_arr(-t * z, t))
    if k == 2:
        f = (1 - t ** v + z) ** n * per_var
        total = 0.0 + 0.0j
        for mu, w in mu_list:
            total += w * complex(np.mean(f * zi ** mu[0]))
        return total
    z1 = z[:, None]
    z2 = z[None, :]
    f = ((1 - t ** v + z1 + z2) ** n
         * _qpoch_inf_arr(z1 / z2, t) * _qpoch_inf_arr(z2 / z1, t)
         * per_var[:, None] * per_var[None, :])
    total = 0.0 + 0.0j
    for mu, w in mu_list:
        poly = np.zeros_like(f)
        for cf, exps in qwhittaker_terms(mu, t):
            poly = poly + cf * np.outer(zi ** exps[0], zi ** exps[1])
        total += w * complex(np.mean(f * poly))
    return total
