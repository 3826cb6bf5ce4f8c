"""Regularized incomplete beta function and the F / Student t tails built on it."""

from __future__ import annotations

import math

from .errors import DomainError

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 2000


def _beta_cf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the continued fraction for I_x(a, b).
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta ``I_x(a, b)`` for ``a, b > 0`` and ``0 <= x <= 1``."""
    if not (a > 0 and b > 0):
        raise DomainError(f"betainc needs a, b > 0 (got a={a}, b={b})")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"betainc needs 0 <= x <= 1 (got {x})")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the continued fraction converges fast only below the mean of the distribution
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def f_upper_tail(x: float, d1: float, d2: float) -> float:
    """``P(F > x)`` for an F(d1, d2) variable."""
    if not math.isfinite(x):
        raise DomainError(f"F statistic must be finite (got {x})")
    if x < 0:
        raise DomainError(f"F statistic must be >= 0 (got {x})")
    if not (d1 > 0 and d2 > 0):
        raise DomainError(f"degrees of freedom must be positive (got {d1}, {d2})")
    if x == 0:
        return 1.0
    return betainc(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * x))


def t_two_sided(t: float, df: float) -> float:
    """``P(|T| >= |t|)`` for a Student t variable with ``df`` degrees of freedom."""
    if math.isnan(t):
        raise DomainError("t statistic is NaN")
    if not df > 0:
        raise DomainError(f"degrees of freedom must be positive (got {df})")
    if math.isinf(t):
        return 0.0
    return betainc(df / 2.0, 0.5, df / (df + t * t))
