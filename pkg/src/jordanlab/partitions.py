"""Integer partitions, signatures, and finite probability mass functions.

Partitions are plain tuples of weakly decreasing positive integers with
trailing zeros dropped; signatures are weakly decreasing integer tuples of
a fixed length (negative entries allowed).  Everything here is an
immutable value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

Partition = tuple[int, ...]
Signature = tuple[int, ...]


def as_partition(parts: Iterable[int]) -> Partition:
    """Normalize to a canonical partition tuple, validating monotonicity."""
    p = tuple(int(x) for x in parts)
    while p and p[-1] == 0:
        p = p[:-1]
    for i in range(len(p) - 1):
        if p[i] < p[i + 1]:
            raise ValueError(f"not weakly decreasing: {p}")
    if p and p[-1] < 0:
        raise ValueError(f"partition parts must be nonnegative: {p}")
    return p


def is_signature(entries: Iterable[int]) -> bool:
    e = tuple(entries)
    return all(e[i] >= e[i + 1] for i in range(len(e) - 1))


def conjugate(lam: Partition) -> Partition:
    """Transpose the Young diagram: conjugate(lam)[i] = #{j : lam_j > i}."""
    if not lam:
        return ()
    out = []
    for i in range(1, lam[0] + 1):
        out.append(sum(1 for part in lam if part >= i))
    return tuple(out)


def multiplicity(lam: Partition, i: int) -> int:
    """Number of parts of lam equal to i (i >= 1)."""
    if i < 1:
        raise ValueError("multiplicity index must be >= 1")
    return sum(1 for part in lam if part == i)


def interlaces(mu, lam) -> bool:
    """True iff lam_1 >= mu_1 >= lam_2 >= mu_2 >= ...

    Signatures must satisfy len(mu) == len(lam) - 1; partitions of any
    lengths are compared with implicit trailing zeros.
    """
    mu = tuple(mu)
    lam = tuple(lam)
    if len(mu) == len(lam) - 1:
        for i in range(len(mu)):
            if not (lam[i] >= mu[i] >= lam[i + 1]):
                return False
        return True
    if any(x < 0 for x in mu) or any(x < 0 for x in lam):
        raise ValueError("signature interlacing requires len(mu) == len(lam) - 1")
    if len(mu) > len(lam):
        # Extra nonzero parts of mu cannot fit under lam's implicit zeros.
        return not any(mu[len(lam):])
    padded = mu + (0,) * (len(lam) - len(mu))
    for i in range(len(lam)):
        upper = lam[i]
        lower = lam[i + 1] if i + 1 < len(lam) else 0
        if not (upper >= padded[i] >= lower):
            return False
    return True


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n, in reverse lexicographic order."""

    def rec(remaining: int, cap: int, prefix: list[int]) -> Iterator[Partition]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def run_lengths(lam: Partition) -> list[tuple[int, int]]:
    """Run-length view: list of (part value, count), values decreasing."""
    out: list[tuple[int, int]] = []
    for part in lam:
        if out and out[-1][0] == part:
            out[-1] = (part, out[-1][1] + 1)
        else:
            out.append((part, 1))
    return out


@dataclass(frozen=True)
class Pmf:
    """Finite probability mass function with a declared mass deficit.

    probs maps keys (partitions or signatures as tuples) to probabilities,
    which may be exact Fractions or floats.  mass_deficit accounts for
    truncated tail mass so that total + deficit = 1 within tolerance.
    """

    probs: Mapping
    mass_deficit: float = 0.0

    def __getitem__(self, key):
        return self.probs.get(tuple(key), 0)

    def total_mass(self):
        return sum(self.probs.values())

    def support(self):
        return set(self.probs)

    def project(self, fn: Callable) -> "Pmf":
        """Pushforward under fn; mass preserved exactly."""
        out: dict = {}
        for key, p in self.probs.items():
            new = fn(key)
            out[new] = out.get(new, 0) + p
        return Pmf(out, self.mass_deficit)

    def validate(self, tol: float = 1e-9) -> None:
        for key, p in self.probs.items():
            if p < -tol:
                raise ValueError(f"negative probability {p} at {key}")
        total = self.total_mass() + self.mass_deficit
        if abs(float(total) - 1.0) > tol:
            raise ValueError(f"mass {total} differs from 1 beyond tol={tol}")
