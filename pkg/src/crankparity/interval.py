"""Outward-rounded real intervals with explicit, per-value precision.

Endpoints are raw mpmath ``mpf`` tuples and every operation is delegated to
``mpmath.libmp.libmpi`` with the precision carried by the operands, so there
is no ambient precision state anywhere.  Transcendental results are widened
by one extra ulp on each side as a guard against last-bit rounding slips in
the underlying library.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional, Union

import mpmath
from mpmath.libmp import (
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_shift,
    mpf_sub,
    round_ceiling,
    round_floor,
    to_int,
    to_str,
)
from mpmath.libmp import libmpi as _mpi

MIN_PREC = 64
MAX_DOUBLINGS = 8

Number = Union[int, Fraction, "RealInterval"]


class IndeterminateError(ArithmeticError):
    """Raised when a rigorous comparison stays undecided at the precision cap."""


def _nudge_down(x, prec):
    if x == fzero:
        return x
    _, man, exp, bc = x
    return mpf_sub(x, from_man_exp(1, exp + bc - prec), prec, round_floor)


def _nudge_up(x, prec):
    if x == fzero:
        return x
    _, man, exp, bc = x
    return mpf_add(x, from_man_exp(1, exp + bc - prec), prec, round_ceiling)


def _widen(iv, prec):
    return (_nudge_down(iv[0], prec), _nudge_up(iv[1], prec))


def _exact_mpf(raw) -> mpmath.mpf:
    # mpmath.mpf(raw) would round to the global context precision
    return mpmath.mp.make_mpf(raw)


class RealInterval:
    """Closed interval ``[lo, hi]`` of reals with outward-rounded arithmetic.

    Mixed operations accept ``int`` and ``Fraction`` operands, which are
    converted exactly (or outward-rounded when not representable).  The
    result precision is the larger of the operand precisions.
    """

    __slots__ = ("_lo", "_hi", "prec")

    def __init__(self, lo, hi, prec: int):
        if prec < MIN_PREC:
            raise ValueError(f"precision must be >= {MIN_PREC} bits, got {prec}")
        if mpf_cmp(lo, hi) > 0:
            raise ValueError("interval endpoints out of order")
        self._lo = lo
        self._hi = hi
        self.prec = prec

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value: Union[int, Fraction], prec: int) -> "RealInterval":
        """Enclosure of an exact integer or rational (a point when representable)."""
        if isinstance(value, RealInterval):
            return value
        if isinstance(value, int):
            bits = abs(value).bit_length()
            if bits <= prec:
                v = from_int(value)
                return cls(v, v, prec)
            return cls(from_int(value, prec, round_floor), from_int(value, prec, round_ceiling), prec)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return cls.exact(value.numerator, prec)
            p, q = value.numerator, value.denominator
            lo = from_rational(p, q, prec, round_floor)
            hi = from_rational(p, q, prec, round_ceiling)
            return cls(lo, hi, prec)
        raise TypeError(f"cannot convert {type(value).__name__} exactly")

    @classmethod
    def hull(cls, a: "RealInterval", b: "RealInterval") -> "RealInterval":
        lo = a._lo if mpf_cmp(a._lo, b._lo) <= 0 else b._lo
        hi = a._hi if mpf_cmp(a._hi, b._hi) >= 0 else b._hi
        return cls(lo, hi, max(a.prec, b.prec))

    @classmethod
    def pi(cls, prec: int) -> "RealInterval":
        lo, hi = _mpi.mpi_pi(prec)
        return cls(lo, hi, prec)

    @classmethod
    def _wrap(cls, pair, prec):
        return cls(pair[0], pair[1], prec)

    def _coerce(self, other):
        if isinstance(other, RealInterval):
            return other
        return RealInterval.exact(other, self.prec)

    @property
    def _pair(self):
        return (self._lo, self._hi)

    # -- endpoints and shape ----------------------------------------------

    @property
    def lo(self) -> mpmath.mpf:
        return _exact_mpf(self._lo)

    @property
    def hi(self) -> mpmath.mpf:
        return _exact_mpf(self._hi)

    @property
    def is_point(self) -> bool:
        """True when no rounding has occurred (the enclosure is a single value)."""
        return self._lo == self._hi

    @property
    def inexact(self) -> bool:
        return not self.is_point

    def width(self) -> mpmath.mpf:
        return _exact_mpf(mpf_sub(self._hi, self._lo, self.prec, round_ceiling))

    def radius(self) -> mpmath.mpf:
        return _exact_mpf(mpf_shift(mpf_sub(self._hi, self._lo, self.prec, round_ceiling), -1))

    def mid(self) -> mpmath.mpf:
        return _exact_mpf(_mpi.mpi_mid(self._pair, self.prec))

    def magnitude(self) -> mpmath.mpf:
        """Upper bound on ``|x|`` over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def to_decimal(self, digits: int = 20) -> str:
        """Midpoint rounded to ``digits`` significant digits; display only."""
        return to_str(_mpi.mpi_mid(self._pair, self.prec), digits)

    def __repr__(self) -> str:
        return f"RealInterval([{to_str(self._lo, 25)}, {to_str(self._hi, 25)}], prec={self.prec})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Number) -> "RealInterval":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return self._wrap(_mpi.mpi_add(self._pair, o._pair, p), p)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "RealInterval":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return self._wrap(_mpi.mpi_sub(self._pair, o._pair, p), p)

    def __rsub__(self, other: Number) -> "RealInterval":
        return self._coerce(other) - self

    def __mul__(self, other: Number) -> "RealInterval":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return self._wrap(_mpi.mpi_mul(self._pair, o._pair, p), p)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "RealInterval":
        o = self._coerce(other)
        if o.contains(0):
            raise ZeroDivisionError("interval division by an interval containing zero")
        p = max(self.prec, o.prec)
        return self._wrap(_mpi.mpi_div(self._pair, o._pair, p), p)

    def __rtruediv__(self, other: Number) -> "RealInterval":
        return self._coerce(other) / self

    def __neg__(self) -> "RealInterval":
        return self._wrap(_mpi.mpi_neg(self._pair), self.prec)

    def __pos__(self) -> "RealInterval":
        return self

    def __abs__(self) -> "RealInterval":
        return self._wrap(_mpi.mpi_abs(self._pair), self.prec)

    def __pow__(self, n: int) -> "RealInterval":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        return self._wrap(_mpi.mpi_pow_int(self._pair, n, self.prec), self.prec)

    def square(self) -> "RealInterval":
        return self._wrap(_mpi.mpi_square(self._pair, self.prec), self.prec)

    def sqrt(self) -> "RealInterval":
        if mpf_cmp(self._lo, fzero) < 0:
            raise ValueError("sqrt of an interval extending below zero")
        return self._wrap(_mpi.mpi_sqrt(self._pair, self.prec), self.prec)

    def exp(self) -> "RealInterval":
        return self._wrap(_widen(_mpi.mpi_exp(self._pair, self.prec), self.prec), self.prec)

    def log(self) -> "RealInterval":
        if mpf_cmp(self._lo, fzero) <= 0:
            raise ValueError("log of an interval not strictly positive")
        return self._wrap(_widen(_mpi.mpi_log(self._pair, self.prec), self.prec), self.prec)

    def cosh(self) -> "RealInterval":
        e = self.exp()
        return (e + 1 / e) / 2

    def cos_sin(self) -> tuple["RealInterval", "RealInterval"]:
        c, s = _mpi.mpi_cos_sin(self._pair, self.prec)
        c = _clip_unit(_widen(c, self.prec))
        s = _clip_unit(_widen(s, self.prec))
        return self._wrap(c, self.prec), self._wrap(s, self.prec)

    # -- set relations ----------------------------------------------------

    def contains(self, value: Number) -> bool:
        """True if every point of ``value`` lies in this interval."""
        o = self._coerce(value)
        return mpf_cmp(self._lo, o._lo) <= 0 and mpf_cmp(o._hi, self._hi) <= 0

    def overlaps(self, other: Number) -> bool:
        o = self._coerce(other)
        return mpf_cmp(self._lo, o._hi) <= 0 and mpf_cmp(o._lo, self._hi) <= 0

    # -- tri-state comparisons: True / False / None (undecided) ---------

    def lt(self, other: Number) -> Optional[bool]:
        o = self._coerce(other)
        if mpf_cmp(self._hi, o._lo) < 0:
            return True
        if mpf_cmp(self._lo, o._hi) >= 0:
            return False
        return None

    def le(self, other: Number) -> Optional[bool]:
        o = self._coerce(other)
        if mpf_cmp(self._hi, o._lo) <= 0:
            return True
        if mpf_cmp(self._lo, o._hi) > 0:
            return False
        return None

    def gt(self, other: Number) -> Optional[bool]:
        return self._coerce(other).lt(self)

    def ge(self, other: Number) -> Optional[bool]:
        return self._coerce(other).le(self)

    def sign(self) -> Optional[int]:
        """+1 / -1 when certified strictly positive / negative, else None."""
        if mpf_cmp(self._lo, fzero) > 0:
            return 1
        if mpf_cmp(self._hi, fzero) < 0:
            return -1
        return None

    def floor_ceil_of_point(self) -> Optional[tuple[int, int]]:
        """(floor, ceil) shared by every point, if the interval avoids integers.

        Returns None when the interval contains an integer, i.e. when the
        rounding cannot be decided at this precision.
        """
        f_lo = to_int(self._lo, round_floor)
        f_hi = to_int(self._hi, round_floor)
        if f_lo != f_hi or mpf_cmp(from_int(f_lo), self._lo) == 0:
            return None
        return f_lo, f_lo + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealInterval):
            return NotImplemented
        return self._lo == other._lo and self._hi == other._hi

    def __hash__(self) -> int:
        return hash((self._lo, self._hi))


def _clip_unit(pair):
    one = from_int(1)
    mone = from_int(-1)
    lo, hi = pair
    if mpf_cmp(lo, mone) < 0:
        lo = mone
    if mpf_cmp(hi, one) > 0:
        hi = one
    return lo, hi


def sqrt_int(n: int, prec: int) -> RealInterval:
    return RealInterval.exact(n, prec).sqrt()


def to_interval(value: Number, prec: int) -> RealInterval:
    if isinstance(value, RealInterval):
        return value
    return RealInterval.exact(value, prec)


def decide(
    predicate: Callable[[int], Optional[bool]],
    prec: int,
    max_doublings: int = MAX_DOUBLINGS,
) -> tuple[Optional[bool], int]:
    """Evaluate a tri-state interval predicate, doubling precision while undecided.

    Returns ``(verdict, precision_used)``; ``verdict`` is None when the cap
    of ``max_doublings`` doublings is exhausted.
    """
    p = prec
    for _ in range(max_doublings + 1):
        verdict = predicate(p)
        if verdict is not None:
            return verdict, p
        p *= 2
    return None, p // 2


def auto_precision(mu_upper: float, base: int = 64) -> int:
    """Working precision able to resolve absolute errors below 1 at size e^mu."""
    return max(base, int(math.ceil(mu_upper / math.log(2))) + 96)
