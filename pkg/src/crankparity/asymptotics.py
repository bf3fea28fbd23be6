"""Interval enclosures of the asymptotic main terms and explicit error envelopes.

Every function takes the working precision as an argument and returns a
:class:`~crankparity.interval.RealInterval`.  Hypotheses of the form
``mu(n) >= c`` are checked in mu-space with certified comparisons.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .dedekind import a_hat
from .interval import (
    IndeterminateError,
    RealInterval,
    auto_precision,
    decide,
    sqrt_int,
)

DEFAULT_PREC = 128

MU_MAIN_TERM = 4
MU_MK_ENVELOPE = 88
MU_Y_BOUNDS = 115


class HypothesisNotMet(ValueError):
    """The index lies outside the range where an explicit bound is stated."""


class Subject(str, enum.Enum):
    DELTA_MAIN_TERM = "DeltaMainTerm"
    MK = "Mk"
    PN = "Pn"
    YK = "Yk"
    EQUIDIST_RATIO = "EquidistRatio"


@dataclass(frozen=True)
class Envelope:
    """Two-sided enclosure ``lower <= quantity <= upper`` valid under ``hypothesis``."""

    subject: Subject
    n: int
    k: Optional[int]
    lower: RealInterval
    upper: RealInterval
    hypothesis: str

    def contains(self, value: Union[int, Fraction], strict: bool = False) -> Optional[bool]:
        """Tri-state test that an exact value lies inside the envelope."""
        if strict:
            above, below = self.lower.lt(value), self.upper.gt(value)
        else:
            above, below = self.lower.le(value), self.upper.ge(value)
        if above is False or below is False:
            return False
        if above and below:
            return True
        return None


# ---------------------------------------------------------------------------
# mu(n) and hypothesis gates
# ---------------------------------------------------------------------------

def mu(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """pi * sqrt(24n - 1) / 6."""
    if n < 1:
        raise ValueError("mu(n) needs n >= 1")
    return RealInterval.pi(prec) * sqrt_int(24 * n - 1, prec) / 6


def mu_float(n: int) -> float:
    """Non-rigorous float value of mu(n), used only to size precisions."""
    return math.pi * math.sqrt(24 * n - 1) / 6


def working_precision(n: int, prec: int = DEFAULT_PREC) -> int:
    """At least ``prec`` and enough bits to resolve absolute error < 1 at e^mu(n)."""
    return max(prec, auto_precision(mu_float(max(n, 1)) + 1))


def mu_at_least(n: int, threshold: int, prec: int = DEFAULT_PREC) -> bool:
    """Certified decision of mu(n) >= threshold."""
    if n < 1:
        return False
    verdict, _ = decide(lambda p: mu(n, p).ge(threshold), prec)
    if verdict is None:
        raise IndeterminateError(f"cannot decide mu({n}) >= {threshold}")
    return verdict


def first_n_with_mu_at_least(threshold: int, prec: int = DEFAULT_PREC) -> int:
    """Smallest n >= 1 with mu(n) >= threshold."""
    # mu(n) >= c  <=>  24n - 1 >= (6c/pi)^2
    guess = max(1, int(((6 * threshold / math.pi) ** 2 + 1) / 24) - 2)
    while mu_at_least(guess, threshold, prec):
        guess -= 1
        if guess < 1:
            return 1
    while not mu_at_least(guess, threshold, prec):
        guess += 1
    return guess


def _require_mu(n: int, threshold: int, prec: int) -> None:
    if not mu_at_least(n, threshold, prec):
        raise HypothesisNotMet(f"mu({n}) >= {threshold} does not hold")


# ---------------------------------------------------------------------------
# Delta(n) = M0(n) - M1(n)
# ---------------------------------------------------------------------------

def main_term(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """(-1)^n pi / (sqrt6 mu) * exp(mu/2), valid for mu(n) >= 4 (n >= 3)."""
    _require_mu(n, MU_MAIN_TERM, prec)
    m = mu(n, prec)
    val = RealInterval.pi(prec) / (sqrt_int(6, prec) * m) * (m / 2).exp()
    return val if n % 2 == 0 else -val


def e_beta_bound(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """63 * mu^(1/2) * exp(mu/4)."""
    _require_mu(n, MU_MAIN_TERM, prec)
    m = mu(n, prec)
    return 63 * m.sqrt() * (m / 4).exp()


def ckl_term_count(n: int, prec: int = DEFAULT_PREC) -> int:
    """Number of indices j with 0 < j < sqrt3 * mu(n) / (2 sqrt(pi))."""
    def attempt(p):
        x = sqrt_int(3, p) * mu(n, p) / (2 * RealInterval.pi(p).sqrt())
        fc = x.floor_ceil_of_point()
        return None if fc is None else fc[0]

    p = prec
    for _ in range(9):
        fl = attempt(p)
        if fl is not None:
            return fl
        p *= 2
    raise IndeterminateError(f"truncation index for n={n} is not resolved")


def ckl_error_bound(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """95 * 6^(1/4) / sqrt(2 pi) * mu^(1/2)."""
    m = mu(n, prec)
    six_quarter = sqrt_int(6, prec).sqrt()
    return 95 * six_quarter / (2 * RealInterval.pi(prec)).sqrt() * m.sqrt()


def ckl_terms(n: int, prec: int = DEFAULT_PREC) -> list[RealInterval]:
    """Individual summands sqrt6 pi/(3 mu) cosh(mu/(2j)) hat-A_j(n)/sqrt(j)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = mu(n, prec)
    factor = sqrt_int(6, prec) * RealInterval.pi(prec) / (3 * m)
    a_prec = -(-prec // 64) * 64
    out = []
    for j in range(1, ckl_term_count(n, prec) + 1):
        aj = a_hat(j, n, a_prec).real
        out.append(factor * (m / (2 * j)).cosh() * aj / sqrt_int(j, prec))
    return out


def ckl_series(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """Finite Kloosterman-type series approximating Delta(n)."""
    total = RealInterval.exact(0, prec)
    for t in ckl_terms(n, prec):
        total = total + t
    return total


# ---------------------------------------------------------------------------
# p(n), G(n) and M_k(n)
# ---------------------------------------------------------------------------

def p_asymptotic(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """pi^2 / (6 sqrt3 mu^2) * (1 - 1/mu) * exp(mu)."""
    m = mu(n, prec)
    pi2 = RealInterval.pi(prec).square()
    return pi2 / (6 * sqrt_int(3, prec) * m.square()) * (1 - 1 / m) * m.exp()


def e_p_bound(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """1313 * exp(mu/2)."""
    return 1313 * (mu(n, prec) / 2).exp()


def bessenrodt_ono_lower(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """sqrt3 / (12 n) * (1 - 1/sqrt n) * exp(mu); a strict lower bound for p(n)."""
    m = mu(n, prec)
    return sqrt_int(3, prec) / (12 * n) * (1 - 1 / sqrt_int(n, prec)) * m.exp()


def g(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """G(n) = pi^2 / (12 sqrt3 mu^2) * (1 - 1/mu) * exp(mu)."""
    m = mu(n, prec)
    pi2 = RealInterval.pi(prec).square()
    return pi2 / (12 * sqrt_int(3, prec) * m.square()) * (1 - 1 / m) * m.exp()


def mk_envelope(n: int, prec: int = DEFAULT_PREC) -> Envelope:
    """G(n)(1 - mu^-6) <= M_k(n) <= G(n)(1 + mu^-6) for k = 0, 1 when mu(n) >= 88."""
    _require_mu(n, MU_MK_ENVELOPE, prec)
    m = mu(n, prec)
    gn = g(n, prec)
    eps = 1 / m ** 6
    return Envelope(Subject.MK, n, None, gn * (1 - eps), gn * (1 + eps), f"mu(n) >= {MU_MK_ENVELOPE}")


def mk_envelope_scaled(n: int, scale: Fraction, prec: int = DEFAULT_PREC) -> Envelope:
    """The same envelope with the relative half-width multiplied by ``scale``."""
    _require_mu(n, MU_MK_ENVELOPE, prec)
    m = mu(n, prec)
    gn = g(n, prec)
    eps = scale / m ** 6
    return Envelope(Subject.MK, n, None, gn * (1 - eps), gn * (1 + eps), f"mu(n) >= {MU_MK_ENVELOPE}")


# ---------------------------------------------------------------------------
# Y_k(n) = M_k(n-1) M_k(n+1) / M_k(n)^2
# ---------------------------------------------------------------------------

def _y_core(m: RealInterval) -> tuple[RealInterval, RealInterval, RealInterval]:
    """(pi^4/(9mu^3) - 4pi^4/(9mu^4) + pi^4/(3mu^5), (pi^8/81 + 5)/mu^6, 60/mu^6)."""
    pi4 = RealInterval.pi(m.prec) ** 4
    m3 = m ** 3
    m6 = m3.square()
    core = pi4 / (9 * m3) - 4 * pi4 / (9 * m3 * m) + pi4 / (3 * m3 * m.square())
    up = (pi4.square() / 81 + 5) / m6
    down = 60 / m6
    return core, up, down


def y_gap_bounds(n: int, prec: int = DEFAULT_PREC) -> tuple[RealInterval, RealInterval]:
    """Enclosures of the bounds on 1 - Y_k(n): (1 - upper bound, 1 - lower bound).

    Computed without forming 1 - (1 - ...), so no cancellation.
    """
    _require_mu(n, MU_Y_BOUNDS, prec)
    core, up, down = _y_core(mu(n, prec))
    return core - up, core + down


def y_bounds(n: int, k: Optional[int] = None, prec: int = DEFAULT_PREC) -> Envelope:
    """Two-sided polynomial bounds on Y_k(n), identical for k = 0 and 1, when mu(n) >= 115."""
    if k not in (None, 0, 1):
        raise ValueError("k must be 0 or 1")
    gap_small, gap_large = y_gap_bounds(n, prec)
    return Envelope(Subject.YK, n, k, 1 - gap_large, 1 - gap_small, f"mu(n) >= {MU_Y_BOUNDS}")


def equidistribution_bound(n: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """11578 * exp(-mu/4), bounding |M_k(n)/p(n) - 1/2| for n >= 4."""
    if n < 4:
        raise HypothesisNotMet("the equidistribution bound is stated for n >= 4")
    return 11578 * (-(mu(n, prec) / 4)).exp()
