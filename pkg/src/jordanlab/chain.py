"""The partition growth chain equal in law to Jordan types over F_q.

One step adds a single box: row l (the first row of a constant block, or a
new bottom row) gains a box with probability t^{l-1} (1 - t^{m}), m the
multiplicity of the block's value; the new-row case uses the convention
m_0 = infinity so its factor is 1 and the masses telescope to 1 exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .partitions import Partition, Pmf, as_partition, run_lengths

DEFAULT_CAP = 40


class Transition(NamedTuple):
    row: int
    target: Partition
    prob: Fraction


def transition_law(mu: Partition, t: Fraction) -> list[Transition]:
    """All one-box transitions out of mu with their exact probabilities."""
    if not (0 < t < 1):
        raise ValueError("t must lie in (0, 1)")
    mu = as_partition(mu)
    blocks = run_lengths(mu)
    out: list[Transition] = []
    row = 1
    for value, count in blocks:
        prob = t ** (row - 1) * (1 - t ** count)
        target = as_partition(mu[: row - 1] + (value + 1,) + mu[row:])
        out.append(Transition(row, target, prob))
        row += count
    out.append(Transition(row, mu + (1,), t ** (row - 1)))
    return out


def simulate(n: int, t, rng) -> Partition:
    """Run the chain n steps from the empty partition.

    Works on the run-length view, O(#distinct parts) per step.  rng needs
    only .random(); both random.Random and numpy Generator qualify.
    """
    tf = float(t)
    log_t = math.log(tf)
    blocks: list[list[int]] = []  # [value, count], values decreasing
    nrows = 0
    for _ in range(n):
        u = rng.random()
        # Row l is chosen with the law P(g >= j) = t^j, g = rows skipped.
        g = int(math.log1p(-u) / log_t)
        if g >= nrows:
            if blocks and blocks[-1][0] == 1:
                blocks[-1][1] += 1
            else:
                blocks.append([1, 1])
            nrows += 1
            continue
        # Find the block containing row g+1 and raise its first row.
        row = 0
        for b, (value, count) in enumerate(blocks):
            if g < row + count:
                if b > 0 and blocks[b - 1][0] == value + 1:
                    blocks[b - 1][1] += 1
                    if count == 1:
                        del blocks[b]
                    else:
                        blocks[b][1] -= 1
                elif count == 1:
                    blocks[b][0] += 1
                else:
                    blocks[b][1] -= 1
                    blocks.insert(b, [value + 1, 1])
                break
            row += count
    parts: list[int] = []
    for value, count in blocks:
        parts.extend([value] * count)
    return tuple(parts)


def simulate_columns(n: int, t, k: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized sampler of the first k column lengths after n steps.

    The truncation of the chain to (lambda'_1, ..., lambda'_k) is itself a
    Markov chain: a step lands in column j iff t^{c_{j-1}} <= U < t^{c_j}
    (c_0 = infinity), and deeper columns never feed back.  One uniform per
    step per sample drives all k comparisons.
    """
    tf = float(t)
    cols = np.zeros((samples, k), dtype=np.int64)
    powers = np.ones((samples, k + 1))  # powers[:, j] = t^{c_j}, col 0 is t^inf = 0
    powers[:, 0] = 0.0
    for _ in range(n):
        u = rng.random(samples)
        hit = (powers[:, :-1] <= u[:, None]) & (u[:, None] < powers[:, 1:])
        cols += hit
        idx = np.nonzero(hit)
        powers[idx[0], idx[1] + 1] *= tf
    return cols


def exact_distribution(n: int, t: Fraction, cap: int = DEFAULT_CAP) -> Pmf:
    """Exact rational pmf of the chain state after n steps (forward DP)."""
    if n > cap:
        raise ValueError(f"n={n} exceeds cap={cap}")
    dist: dict[Partition, Fraction] = {(): Fraction(1)}
    for _ in range(n):
        nxt: dict[Partition, Fraction] = {}
        for mu, p in dist.items():
            for _, target, prob in transition_law(mu, t):
                nxt[target] = nxt.get(target, Fraction(0)) + p * prob
        dist = nxt
    return Pmf(dist, 0.0)


def exact_column_distribution(n: int, t: Fraction, k: int) -> Pmf:
    """Exact pmf of the first k column lengths after n steps.

    Uses the autonomous truncated-column chain rather than the full
    partition DP, so it scales to n well past the partition cap.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    one = Fraction(1)
    dist: dict[tuple[int, ...], Fraction] = {(0,) * k: one}
    for _ in range(n):
        nxt: dict[tuple[int, ...], Fraction] = {}
        for cols, p in dist.items():
            stay = t ** cols[k - 1]  # mass going past column k
            nxt[cols] = nxt.get(cols, Fraction(0)) + p * (1 - stay)
            for j in range(k):
                upper = t ** cols[j - 1] if j > 0 else Fraction(0)
                prob = t ** cols[j] - upper
                if prob == 0:
                    continue
                target = cols[:j] + (cols[j] + 1,) + cols[j + 1:]
                nxt[target] = nxt.get(target, Fraction(0)) + p * prob
        dist = {key: p for key, p in nxt.items() if p != 0}
    return Pmf(dist, 0.0)


def column_projection(dist: Pmf, k: int) -> Pmf:
    """Pushforward of a partition pmf onto its first k conjugate parts."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def proj(lam: Partition) -> tuple[int, ...]:
        return tuple(sum(1 for part in lam if part >= i) for i in range(1, k + 1))

    return dist.project(proj)
