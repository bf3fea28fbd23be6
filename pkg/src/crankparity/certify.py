"""Exact and analytic certification of the crank-parity inequalities.

Exact certificates read a :class:`CrankParityTable` and decide each index in
integer or rational arithmetic.  Where an exact value is compared against an
asymptotic bound, the bound is an outward-rounded interval and precision is
doubled until the comparison is decided (or the cap is hit, in which case
the index is reported as undecided).  Analytic certificates use only the
interval envelopes and hold simultaneously for k = 0 and k = 1.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from . import asymptotics as asy
from .asymptotics import HypothesisNotMet
from .interval import IndeterminateError, RealInterval, decide, sqrt_int
from .partitions import CrankParityTable


class Theorem(str, enum.Enum):
    SIGN_ALTERNATION = "SignAlternation"
    D_EXCESS = "DExcess"
    CONVEXITY = "Convexity"
    LOG_CONCAVITY = "LogConcavity"
    HIGHER_TURAN = "HigherTuran"
    ENVELOPE_CONTAINMENT = "EnvelopeContainment"
    EQUIDISTRIBUTION = "Equidistribution"


class Method(str, enum.Enum):
    EXACT = "Exact"
    ANALYTIC = "Analytic"


class Status(str, enum.Enum):
    PROVED = "Proved"
    VIOLATIONS_FOUND = "ViolationsFound"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Certificate:
    theorem: Theorem
    k: Optional[int]
    n_from: int
    n_to: int
    method: Method
    status: Status
    violations: tuple[int, ...] = ()
    undecided: tuple[int, ...] = ()
    metadata: dict = field(default_factory=dict)

    @property
    def range(self) -> tuple[int, int]:
        return self.n_from, self.n_to

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "k": self.k,
            "range": [self.n_from, self.n_to],
            "method": self.method.value,
            "status": self.status.value,
            "violations": list(self.violations),
            "undecided": list(self.undecided),
            "metadata": dict(self.metadata),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            Theorem(d["theorem"]),
            d["k"],
            d["range"][0],
            d["range"][1],
            Method(d["method"]),
            Status(d["status"]),
            tuple(d["violations"]),
            tuple(d.get("undecided", ())),
            dict(d["metadata"]),
        )


def _certificate(theorem, k, n_from, n_to, method, violations, undecided=(), **metadata) -> Certificate:
    violations = tuple(sorted(violations))
    undecided = tuple(sorted(undecided))
    if violations:
        status = Status.VIOLATIONS_FOUND
    elif undecided:
        status = Status.INDETERMINATE
    else:
        status = Status.PROVED
    return Certificate(theorem, k, n_from, n_to, method, status, violations, undecided, metadata)


def _check_k(k: int) -> None:
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")


def _table_range(table: CrankParityTable, n_from: int, n_to: Optional[int], lo: int, hi_offset: int):
    """Clamp-free validation that [n_from, n_to] sits inside the usable table range."""
    if n_to is None:
        n_to = table.max_n - hi_offset
    if n_from <= n_to:
        if n_from < lo:
            raise ValueError(f"range must start at n >= {lo}")
        if n_to + hi_offset > table.max_n:
            raise ValueError(f"table (max_n={table.max_n}) does not cover n={n_to + hi_offset}")
    return n_from, n_to


def _run(indices: Iterable[int], verdict: Callable[[int], Optional[bool]]):
    violations, undecided = [], []
    for n in indices:
        v = verdict(n)
        if v is None:
            undecided.append(n)
        elif not v:
            violations.append(n)
    return violations, undecided


def _decide_at(predicate: Callable[[int], Optional[bool]], prec: int) -> Optional[bool]:
    return decide(predicate, prec)[0]


# ---------------------------------------------------------------------------
# Exact checks on tables
# ---------------------------------------------------------------------------

def y_k_exact(n: int, k: int, table: CrankParityTable) -> Fraction:
    """Y_k(n) = M_k(n-1) M_k(n+1) / M_k(n)^2 as an exact rational."""
    _check_k(k)
    if not (1 <= n <= table.max_n - 1):
        raise ValueError(f"Y_k(n) needs 1 <= n <= {table.max_n - 1}")
    M = table.m(k)
    if M[n] == 0:
        raise ZeroDivisionError(f"M_{k}({n}) = 0")
    return Fraction(M[n - 1] * M[n + 1], M[n] * M[n])


def check_sign_alternation(table: CrankParityTable, n_from: int = 0, n_to: Optional[int] = None) -> Certificate:
    n_from, n_to = _table_range(table, n_from, n_to, 0, 0)
    d = table.delta
    v, _ = _run(range(n_from, n_to + 1), lambda n: (d[n] if n % 2 == 0 else -d[n]) > 0)
    return _certificate(Theorem.SIGN_ALTERNATION, None, n_from, n_to, Method.EXACT, v)


def d_excess_threshold(d: int, prec: int = asy.DEFAULT_PREC) -> int:
    """ceil(24/pi^2 * ln(7d/2)^2 + 1/24), decided rigorously."""
    if d < 1:
        raise ValueError("d must be a positive integer")

    def attempt(p):
        pi = RealInterval.pi(p)
        x = 24 / pi.square() * RealInterval.exact(Fraction(7 * d, 2), p).log().square() + Fraction(1, 24)
        fc = x.floor_ceil_of_point()
        return None if fc is None else fc[1]

    p = prec
    for _ in range(9):
        c = attempt(p)
        if c is not None:
            return c
        p *= 2
    raise IndeterminateError(f"ceiling for d={d} is not resolved at {p // 2} bits")


def check_d_excess(
    table: CrankParityTable, d: int, n_to: Optional[int] = None, prec: int = asy.DEFAULT_PREC
) -> Certificate:
    """(-1)^n Delta(n) > d for threshold(d) <= n <= n_to."""
    n0 = d_excess_threshold(d, prec)
    n_to = table.max_n if n_to is None else n_to
    n_from, n_to = _table_range(table, n0, n_to, 0, 0)
    dl = table.delta
    v, _ = _run(range(n_from, n_to + 1), lambda n: (dl[n] if n % 2 == 0 else -dl[n]) > d)
    return _certificate(Theorem.D_EXCESS, None, n_from, n_to, Method.EXACT, v, d=d, threshold=n0)


def check_d_excess_supporting(
    table: CrankParityTable, n_from: int = 1, n_to: Optional[int] = None, prec: int = asy.DEFAULT_PREC
) -> Certificate:
    """(-1)^n Delta(n) > (1/7) mu^(1/2) exp(mu/4) for n >= 1."""
    n_from, n_to = _table_range(table, n_from, n_to, 1, 0)
    dl = table.delta

    def verdict(n):
        signed = dl[n] if n % 2 == 0 else -dl[n]

        def pred(p):
            m = asy.mu(n, p)
            return (m.sqrt() * (m / 4).exp() / 7).lt(signed)

        return _decide_at(pred, asy.working_precision(n, prec))

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(
        Theorem.D_EXCESS, None, n_from, n_to, Method.EXACT, v, u, variant="mu-lower-bound", precision=prec
    )


def check_convexity(table: CrankParityTable, k: int, n_from: int, n_to: int) -> Certificate:
    """M_k(n-1) + M_k(n+1) > 2 M_k(n)."""
    _check_k(k)
    n_from, n_to = _table_range(table, n_from, n_to, 1, 1)
    M = table.m(k)
    v, _ = _run(range(n_from, n_to + 1), lambda n: M[n - 1] + M[n + 1] > 2 * M[n])
    return _certificate(Theorem.CONVEXITY, k, n_from, n_to, Method.EXACT, v)


def check_log_concavity(table: CrankParityTable, k: int, n_from: int, n_to: int) -> Certificate:
    """M_k(n)^2 > M_k(n-1) M_k(n+1), i.e. Y_k(n) < 1."""
    _check_k(k)
    n_from, n_to = _table_range(table, n_from, n_to, 1, 1)
    M = table.m(k)
    v, _ = _run(range(n_from, n_to + 1), lambda n: M[n] * M[n] > M[n - 1] * M[n + 1])
    return _certificate(Theorem.LOG_CONCAVITY, k, n_from, n_to, Method.EXACT, v)


def higher_turan_holds(M, n: int) -> bool:
    a, b, c, d = M[n - 1], M[n], M[n + 1], M[n + 2]
    return 4 * (b * b - a * c) * (c * c - b * d) >= (b * c - a * d) ** 2


def check_higher_turan(table: CrankParityTable, k: int, n_from: int, n_to: int) -> Certificate:
    """4(M(n)^2 - M(n-1)M(n+1))(M(n+1)^2 - M(n)M(n+2)) >= (M(n)M(n+1) - M(n-1)M(n+2))^2."""
    _check_k(k)
    n_from, n_to = _table_range(table, n_from, n_to, 1, 2)
    M = table.m(k)
    v, _ = _run(range(n_from, n_to + 1), lambda n: higher_turan_holds(M, n))
    return _certificate(Theorem.HIGHER_TURAN, k, n_from, n_to, Method.EXACT, v)


def last_violation(check: Callable[..., Certificate], table: CrankParityTable, k: int, lo: int = 1) -> Optional[int]:
    """Largest n in the table range at which ``check`` fails (the sharpness index)."""
    hi_offset = 2 if check is check_higher_turan else 1
    cert = check(table, k, lo, table.max_n - hi_offset)
    return cert.violations[-1] if cert.violations else None


# ---------------------------------------------------------------------------
# Exact values against interval bounds
# ---------------------------------------------------------------------------

def check_delta_main_term(
    table: CrankParityTable, n_from: int = 3, n_to: Optional[int] = None, prec: int = asy.DEFAULT_PREC
) -> Certificate:
    """|Delta(n) - main_term(n)| <= e_beta_bound(n)."""
    n_from, n_to = _table_range(table, n_from, n_to, 3, 0)

    def verdict(n):
        return _decide_at(lambda p: abs(table.delta[n] - asy.main_term(n, p)).le(asy.e_beta_bound(n, p)),
                          asy.working_precision(n, prec))

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.ENVELOPE_CONTAINMENT, None, n_from, n_to, Method.EXACT, v, u,
                        subject=asy.Subject.DELTA_MAIN_TERM.value, precision=prec, hypothesis="mu(n) >= 4")


def check_ckl_series(
    table: CrankParityTable, n_from: int = 1, n_to: Optional[int] = None, prec: int = asy.DEFAULT_PREC
) -> Certificate:
    """|Delta(n) - ckl_series(n)| <= 95 6^(1/4) / sqrt(2 pi) mu^(1/2)."""
    n_from, n_to = _table_range(table, n_from, n_to, 1, 0)

    def verdict(n):
        return _decide_at(lambda p: abs(table.delta[n] - asy.ckl_series(n, p)).le(asy.ckl_error_bound(n, p)),
                          asy.working_precision(n, prec))

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.ENVELOPE_CONTAINMENT, None, n_from, n_to, Method.EXACT, v, u,
                        subject="DeltaSeries", precision=prec)


def check_p_asymptotic(
    table: CrankParityTable, n_from: int = 1, n_to: Optional[int] = None, prec: int = asy.DEFAULT_PREC
) -> Certificate:
    """|p(n) - p_asymptotic(n)| <= 1313 exp(mu/2) and p(n) > Bessenrodt-Ono lower bound."""
    n_from, n_to = _table_range(table, n_from, n_to, 1, 0)

    def verdict(n):
        pn = table.p[n]

        def pred(p):
            a = abs(pn - asy.p_asymptotic(n, p)).le(asy.e_p_bound(n, p))
            b = asy.bessenrodt_ono_lower(n, p).lt(pn)
            if a is False or b is False:
                return False
            return True if (a and b) else None

        return _decide_at(pred, asy.working_precision(n, prec))

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.ENVELOPE_CONTAINMENT, None, n_from, n_to, Method.EXACT, v, u,
                        subject=asy.Subject.PN.value, precision=prec)


def check_envelope_containment(
    table: CrankParityTable,
    n_from: int,
    n_to: int,
    prec: int = asy.DEFAULT_PREC,
    scale: Fraction = Fraction(1),
) -> Certificate:
    """G(n)(1 - scale mu^-6) <= M_k(n) <= G(n)(1 + scale mu^-6) for k = 0 and 1.

    ``scale`` other than 1 probes how sharp the envelope is; it is not a
    statement of any theorem.
    """
    n_from, n_to = _table_range(table, n_from, n_to, 1, 0)
    if n_from <= n_to and not asy.mu_at_least(n_from, asy.MU_MK_ENVELOPE, prec):
        raise HypothesisNotMet(f"mu({n_from}) < {asy.MU_MK_ENVELOPE}")

    def verdict(n):
        def pred(p):
            env = asy.mk_envelope_scaled(n, Fraction(scale), p)
            r0, r1 = env.contains(table.m0[n]), env.contains(table.m1[n])
            if r0 is False or r1 is False:
                return False
            return True if (r0 and r1) else None

        return _decide_at(pred, asy.working_precision(n, prec))

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.ENVELOPE_CONTAINMENT, None, n_from, n_to, Method.EXACT, v, u,
                        subject=asy.Subject.MK.value, precision=prec,
                        hypothesis=f"mu(n) >= {asy.MU_MK_ENVELOPE}", scale=str(Fraction(scale)))


def check_y_envelope(
    table: CrankParityTable, k: int, n_from: int, n_to: int, prec: int = 256
) -> Certificate:
    """Exact Y_k(n) lies strictly between the two polynomial bounds in 1/mu(n)."""
    _check_k(k)
    n_from, n_to = _table_range(table, n_from, n_to, 1, 1)
    if n_from <= n_to and not asy.mu_at_least(n_from, asy.MU_Y_BOUNDS, prec):
        raise HypothesisNotMet(f"mu({n_from}) < {asy.MU_Y_BOUNDS}")

    def verdict(n):
        y = y_k_exact(n, k, table)
        return _decide_at(lambda p: asy.y_bounds(n, k, p).contains(y, strict=True), prec)

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.ENVELOPE_CONTAINMENT, k, n_from, n_to, Method.EXACT, v, u,
                        subject=asy.Subject.YK.value, precision=prec,
                        hypothesis=f"mu(n) >= {asy.MU_Y_BOUNDS}")


def check_equidistribution(
    table: CrankParityTable,
    n_from: int = 4,
    n_to: Optional[int] = None,
    prec: int = asy.DEFAULT_PREC,
    k: Optional[int] = None,
) -> Certificate:
    """|M_k(n)/p(n) - 1/2| <= 11578 exp(-mu/4); both k unless one is selected."""
    if n_from < 4:
        raise HypothesisNotMet("the equidistribution bound is stated for n >= 4")
    ks = (0, 1) if k is None else (k,)
    for kk in ks:
        _check_k(kk)
    n_from, n_to = _table_range(table, n_from, n_to, 4, 0)

    def verdict(n):
        devs = [abs(Fraction(table.m(kk)[n], table.p[n]) - Fraction(1, 2)) for kk in ks]
        dev = max(devs)
        return _decide_at(lambda p: asy.equidistribution_bound(n, p).ge(dev), prec)

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.EQUIDISTRIBUTION, k, n_from, n_to, Method.EXACT, v, u,
                        subject=asy.Subject.EQUIDIST_RATIO.value, precision=prec)


def max_equidistribution_deviation(table: CrankParityTable, n_from: int, n_to: int, k: int = 0) -> Fraction:
    M = table.m(k)
    return max(abs(Fraction(M[n], table.p[n]) - Fraction(1, 2)) for n in range(n_from, n_to + 1))


def equidistribution_nonvacuous_from(prec: int = asy.DEFAULT_PREC) -> int:
    """First n >= 4 at which 11578 exp(-mu(n)/4) < 1/2."""
    n = 4
    while True:
        verdict, _ = decide(lambda p: asy.equidistribution_bound(n, p).lt(Fraction(1, 2)), prec)
        if verdict:
            return n
        n += 1


# ---------------------------------------------------------------------------
# Analytic certificates (interval envelopes only)
# ---------------------------------------------------------------------------

IntervalLike = Union[RealInterval, Fraction, int]


def jia_criterion(u: IntervalLike, v: IntervalLike, prec: int = asy.DEFAULT_PREC) -> Optional[bool]:
    """Hypotheses of Jia's sufficient condition for the order-3 Turan inequality.

    Checks (sqrt5 - 1)/2 <= u < v < 1 and u + sqrt((1-u)^3) > v over the whole
    interval ranges.  Returns True (all certified), False (some hypothesis
    certified false) or None (undecided).
    """
    if not isinstance(u, RealInterval) and not isinstance(v, RealInterval):
        order = [Fraction(u) < Fraction(v), Fraction(v) < 1]  # decided exactly
    else:
        order = None
    u = u if isinstance(u, RealInterval) else RealInterval.exact(Fraction(u), prec)
    v = v if isinstance(v, RealInterval) else RealInterval.exact(Fraction(v), prec)
    p = max(u.prec, v.prec)
    golden = (sqrt_int(5, p) - 1) / 2
    checks = [golden.le(u)] + (order if order is not None else [u.lt(v), v.lt(1)])
    gap = 1 - u
    if gap.sign() == -1:
        checks.append(False)
    elif gap.lo >= 0:
        checks.append((u + (gap ** 3).sqrt()).gt(v))
    else:
        checks.append(None)
    if any(c is False for c in checks):
        return False
    if all(c is True for c in checks):
        return True
    return None


def jia_conclusion(u: IntervalLike, v: IntervalLike, prec: int = asy.DEFAULT_PREC) -> Optional[bool]:
    """Tri-state 4(1-u)(1-v) - (1-uv)^2 > 0 by direct interval evaluation."""
    u = u if isinstance(u, RealInterval) else RealInterval.exact(Fraction(u), prec)
    v = v if isinstance(v, RealInterval) else RealInterval.exact(Fraction(v), prec)
    return (4 * (1 - u) * (1 - v) - (1 - u * v).square()).gt(0)


def turan_box_lower(a: RealInterval, b: RealInterval) -> RealInterval:
    """Enclosure of 4ab - (a + b - ab)^2 for a = 1 - Y(n), b = 1 - Y(n+1).

    Uses the equivalent form -(a - b)^2 + 2ab(a + b) - (ab)^2: the near
    cancellation between 4ab and (a + b)^2 is resolved algebraically, so the
    box width only enters through terms of matching size.
    """
    ab = a * b
    return -(a - b).square() + 2 * ab * (a + b) - ab.square()


def _analytic_range(n_from: int, n_to: int, threshold: int, prec: int) -> None:
    if n_from <= n_to and not asy.mu_at_least(n_from, threshold, prec):
        raise HypothesisNotMet(f"mu({n_from}) < {threshold}")


def certify_log_concavity_analytic(n_from: int, n_to: int, prec: int = 256) -> Certificate:
    """Upper polynomial bound on Y_k(n) is < 1 for every n in the range (both k)."""
    _analytic_range(n_from, n_to, asy.MU_Y_BOUNDS, prec)

    def verdict(n):
        return _decide_at(lambda p: asy.y_gap_bounds(n, p)[0].gt(0), prec)

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.LOG_CONCAVITY, None, n_from, n_to, Method.ANALYTIC, v, u,
                        precision=prec, hypothesis=f"mu(n) >= {asy.MU_Y_BOUNDS}",
                        note="the underlying bound holds for every larger n as well")


def dominating_term_nonpositive(n: int, prec: int = asy.DEFAULT_PREC) -> Optional[bool]:
    """-pi^4/(9mu^3) + 4pi^4/(9mu^4) <= 0."""
    m = asy.mu(n, prec)
    pi4 = RealInterval.pi(prec) ** 4
    return (-pi4 / (9 * m ** 3) + 4 * pi4 / (9 * m ** 4)).le(0)


def _turan_box(n: int, p: int) -> Optional[bool]:
    a = RealInterval.hull(*asy.y_gap_bounds(n, p))
    b = RealInterval.hull(*asy.y_gap_bounds(n + 1, p))
    if a.sign() != 1 or b.sign() != 1:
        return None
    return turan_box_lower(a, b).gt(0)


def _turan_jia_chain(n: int, p: int) -> Optional[bool]:
    env_n = asy.y_bounds(n, None, p)
    env_next = asy.y_bounds(n + 1, None, p)
    u = RealInterval.hull(env_n.lower, env_n.upper)
    v = RealInterval.hull(env_next.lower, env_next.upper)
    m = asy.mu(n, p)
    floor_gap = (RealInterval.pi(p) ** 4 - 18) / (9 * m ** 3)
    positivity = asy.y_gap_bounds(n, p)[0].gt(floor_gap)
    jia = jia_criterion(u, v)
    if positivity is False or jia is False:
        return False
    return True if (positivity and jia) else None


def certify_higher_turan_analytic(n_from: int, n_to: int, prec: int = 256) -> Certificate:
    """Order-3 Turan inequality from the Y_k envelopes at n and n+1 (both k).

    Primary route: interval evaluation of the quartic over the envelope box.
    Cross-check: Jia's criterion on the same envelopes.  An index is proved
    only when both routes prove it.
    """
    _analytic_range(n_from, n_to, asy.MU_Y_BOUNDS, prec)
    disagreements = []

    def verdict(n):
        box = _decide_at(lambda p: _turan_box(n, p), prec)
        chain = _decide_at(lambda p: _turan_jia_chain(n, p), prec)
        if box is True and chain is True:
            return True
        if box is False:
            return False
        if box != chain:
            disagreements.append(n)
        return None

    v, u = _run(range(n_from, n_to + 1), verdict)
    return _certificate(Theorem.HIGHER_TURAN, None, n_from, n_to, Method.ANALYTIC, v, u,
                        precision=prec, hypothesis=f"mu(n) >= {asy.MU_Y_BOUNDS}",
                        cross_check="jia", disagreements=len(disagreements),
                        note="the underlying bound holds for every larger n as well")
