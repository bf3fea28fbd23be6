"""Exact partition counts split by crank parity.

The fast path uses the generating function

    sum_n (M0(n) - M1(n)) q^n = (q;q)^3 / (q^2;q^2)^2

whose numerator is sparse by Jacobi's identity.  The series coefficient at
q^1 is -3 because the two-variable crank generating function assigns
crank 0 (weight -1) and cranks +/-1 to the partition (1); the true crank of
(1) is -1, so the coefficient is corrected by +2.  Brute-force enumeration
is kept as an independent oracle.
"""

from __future__ import annotations

import hashlib
import os
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterator, Sequence

ORACLE_CAP = 60
DELTA_AT_ONE_CORRECTION = 2
CACHE_HEADER = "crank-parity-table v1 max_n={}"


class InvariantViolation(ValueError):
    """A table entry fails one of the identities a crank-parity table must satisfy."""


class EnumerationCapExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# Partitions and the crank
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be non-increasing")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def crank_of_partition(partition: Partition | Sequence[int]) -> int:
    """Andrews-Garvan crank.  The empty partition has crank 0 by convention."""
    parts = partition.parts if isinstance(partition, Partition) else tuple(partition)
    if not parts:
        return 0
    ones = sum(1 for p in parts if p == 1)
    if ones == 0:
        return max(parts)
    return sum(1 for p in parts if p > ones) - ones


def iter_partitions(n: int) -> Iterator[list[int]]:
    """All partitions of n as ascending lists (Kelleher's accelerated algorithm).

    The yielded list is reused between iterations; copy it to keep it.
    """
    if n == 0:
        yield []
        return
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        l = k + 1
        while x <= y:
            a[k] = x
            a[l] = y
            yield a[: k + 2]
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield a[: k + 1]


def _crank_ascending(a: list[int]) -> int:
    ones = bisect_right(a, 1)
    if ones == 0:
        return a[-1]
    return len(a) - bisect_right(a, ones) - ones


def brute_force_crank_counts(n: int, cap: int = ORACLE_CAP) -> tuple[int, int]:
    """(M0(n), M1(n)) by enumerating every partition of n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise EnumerationCapExceeded(f"n={n} exceeds the enumeration cap {cap}")
    if n == 0:
        return 1, 0
    even = odd = 0
    for a in iter_partitions(n):
        if _crank_ascending(a) & 1:
            odd += 1
        else:
            even += 1
    return even, odd


# ---------------------------------------------------------------------------
# q-series helpers (truncated at q^N, integer coefficients)
# ---------------------------------------------------------------------------

def generalized_pentagonals(limit: int) -> Iterator[tuple[int, int]]:
    """Pairs (g, sign) with g = k(3k-1)/2 for k = 1, -1, 2, -2, ... and g <= limit.

    ``sign`` is the coefficient of q^g in (q;q)_inf, i.e. (-1)^k.
    """
    k = 1
    while True:
        sign = -1 if k & 1 else 1
        g1 = k * (3 * k - 1) // 2
        if g1 > limit:
            return
        yield g1, sign
        g2 = k * (3 * k + 1) // 2
        if g2 <= limit:
            yield g2, sign
        k += 1


def euler_product_series(N: int) -> list[int]:
    """Dense coefficients of (q;q)_inf up to q^N."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for g, sign in generalized_pentagonals(N):
        coeffs[g] += sign
    return coeffs


def jacobi_cube_series(N: int) -> list[int]:
    """Dense coefficients of (q;q)_inf^3 = sum_m (-1)^m (2m+1) q^{m(m+1)/2}."""
    coeffs = [0] * (N + 1)
    m = 0
    while m * (m + 1) // 2 <= N:
        coeffs[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return coeffs


def series_inverse(a: Sequence[int], N: int) -> list[int]:
    """Coefficients of 1/a(q) up to q^N; requires a[0] = +/-1."""
    if a[0] not in (1, -1):
        raise ValueError("constant term must be a unit")
    nz = [(i, c) for i, c in enumerate(a[1 : N + 1], start=1) if c]
    b = [0] * (N + 1)
    b[0] = a[0]
    for n in range(1, N + 1):
        s = 0
        for i, c in nz:
            if i > n:
                break
            s += c * b[n - i]
        b[n] = -s * a[0]
    return b


def series_mul(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j in range(0, N + 1 - i):
                out[i + j] += x * b[j]
    return out


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def _divide_by_euler(f: Sequence[int], N: int) -> list[int]:
    """Coefficients of f(q)/(q;q)_inf via the pentagonal recurrence."""
    pent = list(generalized_pentagonals(N))
    out = [0] * (N + 1)
    for n in range(N + 1):
        s = f[n]
        for g, sign in pent:
            if g > n:
                break
            s -= sign * out[n - g]
        out[n] = s
    return out


def compute_partition_table(N: int) -> list[int]:
    """p(0..N) from Euler's pentagonal recurrence."""
    if N < 0:
        raise ValueError("N must be non-negative")
    one = [1] + [0] * N
    return _divide_by_euler(one, N)


def compute_parity_difference_table(N: int) -> list[int]:
    """Delta(n) = M0(n) - M1(n) for 0 <= n <= N."""
    if N < 0:
        raise ValueError("N must be non-negative")
    half = N // 2
    # 1/(q;q)^2: divide p(n) by (q;q) once more.
    bipartitions = _divide_by_euler(compute_partition_table(half), half)
    delta = [0] * (N + 1)
    m = 0
    while m * (m + 1) // 2 <= N:
        t = m * (m + 1) // 2
        c = (-1) ** m * (2 * m + 1)
        for k in range(0, (N - t) // 2 + 1):
            delta[t + 2 * k] += c * bipartitions[k]
        m += 1
    if N >= 1:
        delta[1] += DELTA_AT_ONE_CORRECTION
    return delta


@dataclass(frozen=True)
class CrankParityTable:
    """Immutable exact table of p(n), Delta(n), M0(n), M1(n) for 0 <= n <= max_n."""

    max_n: int
    p: tuple[int, ...]
    delta: tuple[int, ...]
    m0: tuple[int, ...] = field(init=False, repr=False)
    m1: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        p = tuple(self.p)
        delta = tuple(self.delta)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "delta", delta)
        if len(p) != self.max_n + 1 or len(delta) != self.max_n + 1:
            raise InvariantViolation(f"table length does not match max_n={self.max_n}")
        m0, m1 = [], []
        for n, (pn, dn) in enumerate(zip(p, delta)):
            if (pn - dn) & 1:
                raise InvariantViolation(f"n={n}: p(n) and delta(n) differ in parity")
            a, b = (pn + dn) // 2, (pn - dn) // 2
            if a < 0 or b < 0:
                raise InvariantViolation(f"n={n}: negative crank count (m0={a}, m1={b})")
            if (dn if n % 2 == 0 else -dn) <= 0:
                raise InvariantViolation(f"n={n}: (-1)^n (M0(n)-M1(n)) > 0 fails")
            m0.append(a)
            m1.append(b)
        object.__setattr__(self, "m0", tuple(m0))
        object.__setattr__(self, "m1", tuple(m1))

    def m(self, k: int) -> tuple[int, ...]:
        if k == 0:
            return self.m0
        if k == 1:
            return self.m1
        raise ValueError("k must be 0 or 1")

    def covers(self, n: int) -> bool:
        return 0 <= n <= self.max_n

    def truncate(self, max_n: int) -> "CrankParityTable":
        if max_n > self.max_n:
            raise ValueError("cannot extend a table by truncation")
        return CrankParityTable(max_n, self.p[: max_n + 1], self.delta[: max_n + 1])

    def delta_checksum(self) -> str:
        h = hashlib.sha256()
        for d in self.delta:
            h.update(f"{d}\n".encode())
        return h.hexdigest()

    # -- cache file ---------------------------------------------------------

    def dumps(self) -> str:
        lines = [CACHE_HEADER.format(self.max_n)]
        lines += [f"{n} {pn} {dn}" for n, (pn, dn) in enumerate(zip(self.p, self.delta))]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CrankParityTable":
        lines = text.splitlines()
        if not lines:
            raise ValueError("empty table file")
        prefix = "crank-parity-table v1 max_n="
        if not lines[0].startswith(prefix):
            raise ValueError(f"bad table header: {lines[0]!r}")
        max_n = int(lines[0][len(prefix):])
        rows = lines[1:]
        if len(rows) != max_n + 1:
            raise ValueError(f"expected {max_n + 1} rows, found {len(rows)}")
        p, delta = [], []
        for expected, line in enumerate(rows):
            n_s, p_s, d_s = line.split()
            if int(n_s) != expected:
                raise ValueError(f"row {expected} is labelled {n_s}")
            p.append(int(p_s))
            delta.append(int(d_s))
        return cls(max_n, p, delta)

    def save(self, path: str | os.PathLike) -> None:
        path = os.fspath(path)
        tmp = f"{path}.tmp{os.getpid()}"
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.dumps())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "CrankParityTable":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


def build_table(N: int) -> CrankParityTable:
    return CrankParityTable(N, compute_partition_table(N), compute_parity_difference_table(N))
