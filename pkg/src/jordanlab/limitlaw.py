"""The discrete limit law for column fluctuations: series, closed form, contour.

Three independent evaluation routes for the pmf of the k-dimensional limit
signature distribution with parameters t in (0,1) and chi > 0:

* limit_pmf_series: the defining series, a sum over shifts d and
  interlacing signatures mu, with dual-Hall-Littlewood specialization
  factors;
* limit_pmf_k1: the explicit alternating series, k = 1 only;
* limit_pmf_contour: quadrature over (a truncation of) the keyhole-style
  contour made of two horizontal rays at imaginary parts +-1 and the right
  unit half-circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct
from typing import NamedTuple

import numpy as np

from .partitions import Pmf, conjugate, is_signature
from .qseries import qbinomial, qpochhammer, qpochhammer_inf
from .symfunc import hl_Q_gamma_alpha1, qwhittaker_terms


class Estimate(NamedTuple):
    """A numeric probability together with its truncation/quadrature bound."""

    value: float
    err: float


class NonconvergenceError(RuntimeError):
    """Raised when the requested tolerance is unreachable; carries the
    achieved error estimate."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


def dinf(a, b) -> float:
    """Sup over keys of |a(x) - b(x)|; missing keys count as 0."""
    pa = a.probs if isinstance(a, Pmf) else a
    pb = b.probs if isinstance(b, Pmf) else b
    keys = set(pa) | set(pb)
    return max((abs(float(pa.get(x, 0)) - float(pb.get(x, 0))) for x in keys), default=0.0)


def limit_pmf_k1(t: float, chi: float, x: int, tol: float = 1e-14) -> Estimate:
    """Explicit k=1 law: alternating series over m with super-exponentially
    decaying terms t^binom(m,2)/(t;t)_m weighted by e^{-chi t^{x-m}}."""
    if not (0 < t < 1) or chi <= 0:
        raise ValueError("need t in (0,1) and chi > 0")
    pref = 1.0 / qpochhammer_inf(t, t, tol=1e-17).value
    total = 0.0
    poch = 1.0
    tb = 1.0  # t^binom(m,2)
    for m in range(200):
        term = math.exp(-chi * t ** (x - m)) * (-1) ** m * tb / poch
        total += term
        # Remaining terms are bounded by the next term's envelope.
        envelope = tb * t ** m / (poch * (1 - t ** (m + 1)) * (1 - t))
        if envelope < tol:
            return Estimate(pref * total, pref * envelope)
        tb *= t ** m
        poch *= 1 - t ** (m + 1)
    raise NonconvergenceError("k=1 series did not converge", math.inf)


def limit_pmf_series(k: int, t: float, chi: float, L, tol: float = 1e-13,
                     max_terms: int = 400) -> Estimate:
    """Defining series for the k-dimensional pmf at signature L.

    Outer sum over d <= L_k, truncated once the e^{-chi t^d} majorant and
    three consecutive term magnitudes fall below tol/10; inner finite sum
    over signatures mu interlacing below L.
    """
    L = tuple(L)
    if len(L) != k:
        raise ValueError("signature length must equal k")
    if not is_signature(L):
        raise ValueError(f"not a signature: {L}")
    if not (0 < t < 1) or chi <= 0:
        raise ValueError("need t in (0,1) and chi > 0")
    pref = 1.0 / qpochhammer_inf(t, t, tol=1e-17).value
    inner_pairs = []  # (mu, sign-free binomial product) reused across d
    if k == 1:
        inner_pairs.append(((), 1.0))
    else:
        ranges = [range(L[i + 1], L[i] + 1) for i in range(k - 1)]
        for mu in iproduct(*ranges):
            w = 1.0
            for i in range(k - 1):
                w *= qbinomial(L[i] - L[i + 1], L[i] - mu[i], t)
            inner_pairs.append((mu, w))
    denom_fixed = 1.0
    for i in range(k - 1):
        denom_fixed *= qpochhammer(t, t, L[i] - L[i + 1])

    total = 0.0
    small_streak = 0
    for step in range(max_terms):
        d = L[k - 1] - step
        expo = math.exp(-chi * t ** d)
        tpow = t ** sum_binom2(L, d)
        outer = expo * tpow / (qpochhammer(t, t, L[k - 1] - d) * denom_fixed)
        majorant = expo * tpow / denom_fixed
        if outer == 0.0 and majorant < tol / 10:
            small_streak += 1
            if small_streak >= 3:
                break
            continue
        tau = (1 - t) * t ** d * chi
        inner = 0.0
        size_L = sum(L)
        for mu, w in inner_pairs:
            sign = -1 if (size_L - sum(mu) - d) % 2 else 1
            lam = conjugate(tuple(m - d for m in mu))
            inner += sign * w * hl_Q_gamma_alpha1(lam, tau, t)
        term = outer * inner
        total += term
        if abs(term) < tol / 10 and majorant < tol / 10:
            small_streak += 1
            if small_streak >= 3:
                break
        else:
            small_streak = 0
    else:
        raise NonconvergenceError("series truncation did not converge", abs(term))
    return Estimate(pref * total, tol)


def sum_binom2(L, d: int) -> int:
    return sum((Li - d) * (Li - d - 1) // 2 for Li in L)


@dataclass(frozen=True)
class ContourSpec:
    """Quadrature layout on the rays-plus-half-circle contour.

    Rays at Im = +-1 are truncated at Re = -ray_truncation and split into
    geometrically growing panels; every segment gets Gauss-Legendre nodes.
    """

    ray_truncation: float = 40.0
    nodes_per_segment: int = 24
    max_doublings: int = 5


def _contour_nodes(spec: ContourSpec, nodes: int, chord: bool):
    """Complex nodes w and weights (including dw), oriented counterclockwise:
    lower ray in, crossing segment up, upper ray out.

    The crossing is the right unit half-circle, or — when `chord` is set and
    the integrand is analytic at 0 — its deformation to the vertical segment
    Re = 0, where an e^{c w} factor with large c > 0 stays bounded instead of
    reaching e^c.
    """
    x_gl, w_gl = np.polynomial.legendre.leggauss(nodes)
    panels = [(0.0, 1.0)]
    while panels[-1][1] < spec.ray_truncation:
        a = panels[-1][1]
        panels.append((a, min(2 * a, spec.ray_truncation)))
    ws = []
    cs = []
    # Lower ray: w = x - i, x from -R to 0.
    for a, b in reversed(panels):
        mid, half = (-b + -a) / 2, (b - a) / 2
        ws.append(mid + half * x_gl - 1j)
        cs.append(half * w_gl)
    if chord:
        # Vertical segment w = iy, y from -1 to 1, dw = i dy.
        ws.append(1j * x_gl)
        cs.append(1j * w_gl)
    else:
        # Arc: w = e^{i theta}, theta in [-pi/2, pi/2], dw = i e^{i theta} dtheta.
        theta = (math.pi / 2) * x_gl
        ws.append(np.exp(1j * theta))
        cs.append((math.pi / 2) * w_gl * 1j * np.exp(1j * theta))
    # Upper ray: w = x + i, x from 0 to -R.
    for a, b in panels:
        mid, half = (-a + -b) / 2, (b - a) / 2
        ws.append(mid - half * x_gl + 1j)
        cs.append(-half * w_gl)
    return np.concatenate(ws), np.concatenate(cs)


def _qpoch_inf_arr(z: np.ndarray, t: float, tol: float = 1e-16) -> np.ndarray:
    """(z;t)_inf on an array, truncated so the uniform tail is below tol."""
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    n = 1
    p = t
    while zmax * p / (1 - t) > tol and n < 100000:
        n += 1
        p *= t
    out = np.ones_like(z)
    power = 1.0
    for _ in range(n):
        out = out * (1 - z * power)
        power *= t
    return out


def _auto_truncation(t: float, chi: float, L_k: int, tol: float) -> float:
    """Ray length making the e^{chi t^{L_k} Re(w)} tail negligible."""
    rate = chi * t ** L_k
    return max(10.0, -math.log(tol / 100.0) / rate)


def limit_pmf_contour(k: int, t: float, chi: float, L, tol: float = 1e-8,
                      spec: ContourSpec | None = None) -> Estimate:
    """Contour-integral route to the same pmf; k <= 3."""
    L = tuple(L)
    if len(L) != k:
        raise ValueError("signature length must equal k")
    if not is_signature(L):
        raise ValueError(f"not a signature: {L}")
    if k > 3:
        raise ValueError("contour quadrature is limited to k <= 3")
    if spec is None:
        spec = ContourSpec(ray_truncation=_auto_truncation(t, chi, L[-1], tol))
    rate = chi * t ** L[-1]
    tail = math.exp(-rate * spec.ray_truncation) / rate

    prev = None
    nodes = spec.nodes_per_segment
    for _ in range(spec.max_doublings + 1):
        value = _contour_value(k, t, rate, L, spec, nodes)
        if prev is not None:
            change = abs(value - prev)
            if change < tol / 2:
                return Estimate(value, change + tail)
        prev = value
        nodes *= 2
    raise NonconvergenceError(
        f"contour quadrature did not reach tol={tol}", abs(value - prev))


def _contour_value(k: int, t: float, rate: float, L, spec: ContourSpec,
                   nodes: int) -> float:
    w, c = _contour_nodes(spec, nodes, chord=(k == 1))
    if k == 1:
        # One-dimensional form: the j-sum telescopes into 1/(-w;t)_inf.
        integrand = np.exp(rate * w) / _qpoch_inf_arr(-w, t)
        return float(np.real(np.sum(integrand * c) / (2j * math.pi)))

    # The integrand separates per variable except the pair couplings
    # (w_i/w_j;t)_inf (w_j/w_i;t)_inf, so the k-fold integral collapses to
    # bilinear (k=2) / trilinear (k=3) forms over the 1-D node array.
    f = np.exp(rate * w) * c / (
        w * _qpoch_inf_arr(-1.0 / w, t) * _qpoch_inf_arr(-t * w, t))
    pair = _qpoch_inf_arr(w[:, None] / w[None, :], t)
    H = pair * pair.T  # symmetric coupling of one variable pair
    winv = 1.0 / w

    gap = L[k - 2] - L[k - 1]
    terms: list[tuple[float, tuple[int, ...]]] = []
    for j in range(gap + 1):
        shifted = tuple(Li - L[k - 1] for Li in L[:-1]) + (j,)
        coef = t ** (j * (j + 1) // 2) * qbinomial(gap, j, t)
        for cf, exps in qwhittaker_terms(shifted, t):
            terms.append((coef * cf, exps))

    total = 0.0 + 0.0j
    if k == 2:
        for cf, exps in terms:
            u = f * winv ** exps[0]
            v = f * winv ** exps[1]
            total += cf * (u @ (H @ v))
    else:
        for cf, exps in terms:
            x = f * winv ** exps[0]
            u = f * winv ** exps[1]
            v = f * winv ** exps[2]
            coupling = H.T @ (x[:, None] * H)  # sums out the first variable
            total += cf * (u @ ((H * coupling) @ v))

    pref = qpochhammer_inf(t, t, tol=1e-17).value ** (k - 1) / math.factorial(k)
    for i in range(k - 1):
        pref *= t ** ((L[i] - L[k - 1]) * (L[i] - L[k - 1] - 1) // 2)
        pref /= qpochhammer(t, t, L[i] - L[i + 1])
    return float(np.real(pref * total / (2j * math.pi) ** k))
