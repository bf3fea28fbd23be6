"""Dedekind sums and the Kloosterman-type sums hat-A_j(n).

    hat-A_j(n) = sum_{0 <= h < 2j, gcd(h, 2j) = 1}
                 exp(-pi i n h / j - pi i (3 s(h, 2j) - 2 s(h, j)))

Phases are assembled as exact rationals (multiples of pi) and reduced into
(-1, 1] before a single interval cosine/sine evaluation per term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .interval import RealInterval

ExactRational = Fraction

GUARD_BITS = 16


def dedekind_sum_direct(h: int, j: int) -> Fraction:
    """s(h, j) straight from the sawtooth product definition (O(j))."""
    if j < 1:
        raise ValueError("j must be positive")
    if j == 1:
        return Fraction(0)
    total = Fraction(0)
    for r in range(1, j):
        a = Fraction(r, j) - (r // j) - Fraction(1, 2)
        hr = h * r
        b = Fraction(hr, j) - (hr // j) - Fraction(1, 2)
        total += a * b
    return total


@lru_cache(maxsize=1 << 16)
def dedekind_sum(h: int, j: int) -> Fraction:
    """s(h, j) by the reciprocity recursion (O(log j)).

    Agrees with the literal definition for every integer h, including h not
    coprime to j: the terms where j | hr contribute zero in total.
    """
    if j < 1:
        raise ValueError("j must be positive")
    h %= j
    if j == 1 or h == 0:
        return Fraction(0)
    g = math.gcd(h, j)
    h //= g
    k = j // g
    # s(h,k) = (h/k + k/h + 1/(hk))/12 - 1/4 - s(k mod h, h), iterated.
    total = Fraction(0)
    sign = 1
    while h > 0 and k > 1:
        total += sign * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        h, k = k % h, h
        sign = -sign
    return total


def dedekind_reciprocity_check(h: int, k: int) -> bool:
    """s(h,k) + s(k,h) == -1/4 + (h/k + k/h + 1/(hk))/12 in exact arithmetic."""
    if h < 1 or k < 1:
        raise ValueError("h and k must be positive")
    if math.gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")
    lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
    rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
    return lhs == rhs


@dataclass(frozen=True)
class ExpSumValue:
    real: RealInterval
    imag: RealInterval
    precision_bits: int
    term_count: int
    j: int

    @property
    def error(self):
        """Certified evaluation error: largest interval radius of either part."""
        return max(self.real.radius(), self.imag.radius())

    @property
    def error_budget(self):
        """A-priori error budget 2j * 2^-precision_bits for the sum."""
        return 2 * self.j * mpmath.mpf(2) ** (-self.precision_bits)

    def abs_upper(self):
        """Upper bound on |value|."""
        return mpmath.sqrt(self.real.magnitude() ** 2 + self.imag.magnitude() ** 2)


@lru_cache(maxsize=4096)
def _phase_offsets(j: int) -> tuple[tuple[int, Fraction], ...]:
    """(h, 3 s(h,2j) - 2 s(h,j)) for every admissible h."""
    two_j = 2 * j
    return tuple(
        (h, 3 * dedekind_sum(h, two_j) - 2 * dedekind_sum(h, j))
        for h in range(two_j)
        if math.gcd(h, two_j) == 1
    )


def _reduce_phase(theta: Fraction) -> Fraction:
    """Representative of theta modulo 2 in (-1, 1]."""
    t = theta % 2
    return t - 2 if t > 1 else t


def _unit_phase(theta: Fraction, prec: int) -> tuple[RealInterval, RealInterval]:
    """(cos(pi theta), sin(pi theta)) as intervals; exact at multiples of 1/2."""
    if theta.denominator <= 2:
        q = int(theta * 2) % 4
        c, s = ((1, 0), (0, 1), (-1, 0), (0, -1))[q]
        return RealInterval.exact(c, prec), RealInterval.exact(s, prec)
    angle = RealInterval.pi(prec) * theta
    return angle.cos_sin()


@lru_cache(maxsize=1 << 14)
def _a_hat_residue(j: int, r: int, prec: int) -> ExpSumValue:
    work = prec + GUARD_BITS + (2 * j - 1).bit_length()
    re = RealInterval.exact(0, work)
    im = RealInterval.exact(0, work)
    terms = _phase_offsets(j)
    for h, offset in terms:
        theta = _reduce_phase(Fraction(-r * h, j) - offset)
        c, s = _unit_phase(theta, work)
        re = re + c
        im = im + s
    return ExpSumValue(re, im, prec, len(terms), j)


def a_hat(j: int, n: int, precision_bits: int = 128) -> ExpSumValue:
    """Interval evaluation of hat-A_j(n).

    The sum depends on n only through n mod 2j, and results are memoised on
    that residue.
    """
    if j < 1:
        raise ValueError("j must be positive")
    if n < 0:
        raise ValueError("n must be non-negative")
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    return _a_hat_residue(j, n % (2 * j), precision_bits)


def a_hat_reference(j: int, n: int, dps: int = 60) -> mpmath.mpc:
    """Plain mpmath summation of hat-A_j(n) straight from the definition.

    Uses the direct Dedekind sums and ordinary floating exponentials; it is an
    independent cross-check, not a certified value.
    """
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for h in range(2 * j):
            if math.gcd(h, 2 * j) != 1:
                continue
            phase = Fraction(n * h, j) + 3 * dedekind_sum_direct(h, 2 * j) - 2 * dedekind_sum_direct(h, j)
            total += mpmath.expjpi(-mpmath.mpf(phase.numerator) / phase.denominator)
        return +total
