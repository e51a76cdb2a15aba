"""Exact linear algebra over F_q for strictly upper-triangular matrices.

Prime fields use modular arithmetic; prime-power fields use log/antilog
tables built from a fixed primitive polynomial.  GF(2) matrices take a
bit-packed row representation for rank and multiplication; other q use
tuple-of-tuples entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .partitions import Partition, conjugate

# Primitive polynomial coefficients (ascending degree, constant first) for
# GF(p^m), p^m <= 256.  x is a generator of the multiplicative group.
_PRIMITIVE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 0, 0, 1, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError("q must be >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            r = q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, m
    raise ValueError(f"{q} is not a prime power")


class FiniteField:
    """The field F_q, q = p^m a prime power.

    Elements are integers 0..q-1.  For m > 1 the integer's base-p digits
    are the coefficients of a polynomial over F_p reduced modulo a fixed
    primitive polynomial; multiplication goes through log/antilog tables.
    """

    def __init__(self, q: int):
        p, m = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.m = m
        if m > 1:
            if (p, m) not in _PRIMITIVE_POLYS:
                raise ValueError(f"no primitive polynomial table for q={q}")
            self._build_tables()

    def _poly_mul_x(self, a: int) -> int:
        """Multiply the element a by x, reducing modulo the primitive polynomial."""
        p, m = self.p, self.m
        digits = []
        r = a
        for _ in range(m):
            digits.append(r % p)
            r //= p
        lead = digits[-1]
        shifted = [0] + digits[:-1]
        if lead:
            poly = _PRIMITIVE_POLYS[(p, m)]
            for i in range(m):
                shifted[i] = (shifted[i] - lead * poly[i]) % p
        out = 0
        for d in reversed(shifted):
            out = out * p + d
        return out

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        exp = [1]
        for _ in range(q - 2):
            exp.append(self._poly_mul_x(exp[-1]))
        if len(set(exp)) != q - 1:
            raise ValueError("polynomial is not primitive")
        log = [0] * q
        for e, val in enumerate(exp):
            log[val] = e
        self._exp = exp
        self._log = log
        # Addition is digitwise mod p; precompute a flat table.
        add = [0] * (q * q)
        for a in range(q):
            for b in range(q):
                out = 0
                ra, rb, mult = a, b, 1
                for _ in range(self.m):
                    out += ((ra + rb) % p) * mult
                    ra //= p
                    rb //= p
                    mult *= p
                add[a * q + b] = out
        self._add = add

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._add[a * self.q + b]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        out = 0
        r, mult = a, 1
        for _ in range(self.m):
            out += ((-r) % self.p) * mult
            r //= self.p
            mult *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]


@dataclass(frozen=True)
class MatrixGFq:
    """Immutable n x n matrix over F_q; rows of integer entries."""

    field: FiniteField
    rows: tuple[tuple[int, ...], ...]
    strict: bool = False

    def __post_init__(self):
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError("matrix must be square")
            if self.strict and any(row[j] != 0 for j in range(i + 1)):
                raise ValueError("strict flag requires zeros on and below diagonal")

    @property
    def n(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.rows)

    def matmul(self, other: "MatrixGFq") -> "MatrixGFq":
        f = self.field
        n = self.n
        if f.q == 2:
            a_bits = _pack_gf2(self.rows)
            b_bits = _pack_gf2(other.rows)
            c_bits = _matmul_gf2(a_bits, b_bits)
            return MatrixGFq(f, _unpack_gf2(c_bits, n))
        out = []
        for i in range(n):
            row = [0] * n
            arow = self.rows[i]
            for k in range(n):
                a = arow[k]
                if a == 0:
                    continue
                brow = other.rows[k]
                for j in range(n):
                    if brow[j]:
                        row[j] = f.add(row[j], f.mul(a, brow[j]))
            out.append(tuple(row))
        return MatrixGFq(f, tuple(out))

    def dump(self) -> str:
        """Debug format: one line per row, entries as base-q integers."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


def _pack_gf2(rows) -> list[int]:
    return [sum(bit << j for j, bit in enumerate(row)) for row in rows]


def _unpack_gf2(bits: list[int], n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple((r >> j) & 1 for j in range(n)) for r in bits)


def _matmul_gf2(a_bits: list[int], b_bits: list[int]) -> list[int]:
    out = []
    for a in a_bits:
        acc = 0
        while a:
            j = (a & -a).bit_length() - 1
            acc ^= b_bits[j]
            a &= a - 1
        out.append(acc)
    return out


def rank_gf2_bits(rows: list[int], n: int) -> int:
    """Rank over GF(2) of bit-packed rows via in-place elimination."""
    work = list(rows)
    r = 0
    nrows = len(work)
    for col in range(n):
        bit = 1 << col
        piv = -1
        for i in range(r, nrows):
            if work[i] & bit:
                piv = i
                break
        if piv < 0:
            continue
        work[r], work[piv] = work[piv], work[r]
        wr = work[r]
        for i in range(nrows):
            if i != r and (work[i] & bit):
                work[i] ^= wr
        r += 1
        if r == nrows:
            break
    return r


def rank_dense(rows, field: FiniteField) -> int:
    """Rank over F_q by Gaussian elimination on a dense row copy."""
    work = [list(row) for row in rows]
    n = len(work[0]) if work else 0
    r = 0
    for col in range(n):
        piv = -1
        for i in range(r, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = field.inv(work[r][col])
        work[r] = [field.mul(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                c = work[i][col]
                work[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def rank(a: MatrixGFq) -> int:
    if a.field.q == 2:
        return rank_gf2_bits(_pack_gf2(a.rows), a.n)
    return rank_dense(a.rows, a.field)


def sample_strict_upper(n: int, field: FiniteField, rng) -> MatrixGFq:
    """Uniformly random strictly upper-triangular n x n matrix over F_q.

    rng is anything with randrange (random.Random) or integers (numpy
    Generator); each strictly-upper entry is independently uniform.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    draw = _entry_sampler(field.q, rng)
    rows = []
    for i in range(n):
        row = [0] * (i + 1) + [draw() for _ in range(n - i - 1)]
        rows.append(tuple(row))
    return MatrixGFq(field, tuple(rows), strict=True)


def _entry_sampler(q: int, rng):
    if hasattr(rng, "randrange"):
        return lambda: rng.randrange(q)
    return lambda: int(rng.integers(q))


def enumerate_strict_upper(n: int, field: FiniteField) -> Iterator[MatrixGFq]:
    """Every strictly upper-triangular matrix exactly once (small n only)."""
    free = n * (n - 1) // 2
    total = field.q ** free
    if total > 2 ** 24:
        raise ValueError(f"enumeration of {total} matrices exceeds the 2^24 guard")
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for code in range(total):
        entries = [[0] * n for _ in range(n)]
        c = code
        for (i, j) in positions:
            entries[i][j] = c % field.q
            c //= field.q
        yield MatrixGFq(field, tuple(tuple(r) for r in entries), strict=True)


def jordan_type(a: MatrixGFq) -> Partition:
    """Jordan type of a nilpotent matrix: conjugate of the corank increments
    rank(A^{i-1}) - rank(A^i)."""
    n = a.n
    ranks = [n]
    power = a
    while True:
        r = rank(power)
        ranks.append(r)
        if r == 0:
            break
        if len(ranks) > n + 1:
            raise ValueError("matrix is not nilpotent")
        power = power.matmul(a)
    cols = tuple(ranks[i] - ranks[i + 1] for i in range(len(ranks) - 1))
    out = conjugate(cols)
    return out


def jordan_type_gf2_bits(rows: list[int], n: int) -> Partition:
    """Bit-packed GF(2) fast path for jordan_type."""
    ranks = [n]
    power = rows
    while True:
        r = rank_gf2_bits(power, n)
        ranks.append(r)
        if r == 0:
            break
        power = _matmul_gf2(power, rows)
    cols = tuple(ranks[i] - ranks[i + 1] for i in range(len(ranks) - 1))
    return conjugate(cols)


def column_counts_gf2_bits(rows: list[int], n: int, k: int) -> tuple[int, ...]:
    """First k corank increments rank(A^{i-1}) - rank(A^i) without computing
    the full Jordan type: only k - 1 products and k rank eliminations."""
    ranks = [n]
    power = rows
    for i in range(k):
        r = rank_gf2_bits(power, n) if ranks[-1] > 0 else 0
        ranks.append(r)
        if i + 1 < k and r > 0:
            power = _matmul_gf2(power, rows)
    return tuple(ranks[i] - ranks[i + 1] for i in range(k))


def sample_strict_upper_gf2_bits(n: int, rng) -> list[int]:
    """Bit-packed sampler: row i has uniform bits strictly above the diagonal."""
    if hasattr(rng, "getrandbits"):
        return [(rng.getrandbits(n) >> (i + 1)) << (i + 1) for i in range(n)]
    out = []
    for i in range(n):
        bits = 0
        for j in range(i + 1, n):
            bits |= int(rng.integers(2)) << j
        out.append(bits)
    return out
