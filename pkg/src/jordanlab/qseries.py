"""q-Pochhammer symbols and Gaussian binomial coefficients.

All functions accept exact rationals (``fractions.Fraction``), floats, or
complex scalars.  Exact inputs give exact outputs for the finite products;
the infinite product is necessarily numeric and reports its truncation
bound alongside the value.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple


class QPochhammerInf(NamedTuple):
    """Value of an infinite q-Pochhammer product plus its truncation bound."""

    value: complex
    bound: float


def qpochhammer(z, t, n: int):
    """Finite q-Pochhammer symbol (z;t)_n = prod_{j<n} (1 - z t^j)."""
    if n < 0:
        raise ValueError("qpochhammer order must be nonnegative")
    out = 1
    p = 1
    for _ in range(n):
        out *= 1 - z * p
        p *= t
    return out


def qpochhammer_inf(z, t, tol: float = 1e-15) -> QPochhammerInf:
    """Infinite product (z;t)_inf, truncated once the tail bound drops below tol.

    Requires |t| < 1.  The returned bound dominates the relative error of
    the truncation: |z| |t|^N / (1 - |t|) times the partial product.
    """
    at = abs(t)
    if at >= 1:
        raise ValueError("infinite q-Pochhammer requires |t| < 1")
    out = 1.0 + 0j if isinstance(z, complex) or isinstance(t, complex) else 1.0
    p = 1
    az = abs(z)
    for _ in range(100000):
        tail = az * abs(p) / (1 - at) * abs(out)
        if tail < tol:
            return QPochhammerInf(out, tail)
        out = out * (1 - z * p)
        p = p * t
    raise ValueError("infinite q-Pochhammer did not converge")


def qbinomial(n, k: int, t):
    """Gaussian binomial [n k]_t = (t;t)_n / ((t;t)_k (t;t)_{n-k}).

    Exact when t is a Fraction.  n = math.inf uses the convention
    [inf k]_t = 1/(t;t)_k.  Out-of-range k gives 0.
    """
    if k < 0:
        return 0
    if n == math.inf:
        denom = qpochhammer(t, t, k)
        return Fraction(1, 1) / denom if isinstance(t, Fraction) else 1 / denom
    if k > n or n < 0:
        return 0
    # Product form (1-t^{n-k+1})...(1-t^n) / (t;t)_k avoids building (t;t)_n.
    num = 1
    p = t ** (n - k)
    for _ in range(k):
        p *= t
        num *= 1 - p
    den = qpochhammer(t, t, k)
    if isinstance(t, Fraction):
        return Fraction(num) / den
    return num / den
