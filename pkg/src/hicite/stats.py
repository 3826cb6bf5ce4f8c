"""Descriptive moments, one-way ANOVA, Spearman correlation and rankings.

Missing values are ``None`` (or NaN); every function here drops them first,
so descriptives and ANOVA work on available cases and correlations on
pairwise-complete cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DegenerateError, EmptySampleError, InsufficientDataError
from .special import f_upper_tail, t_two_sided

SIGNIFICANCE_99 = 0.01


def _present(v) -> bool:
    return v is not None and not (isinstance(v, float) and math.isnan(v))


def available(values: Iterable[float | None]) -> list[float]:
    return [float(v) for v in values if _present(v)]


@dataclass(frozen=True)
class DescriptiveStats:
    """Sample summary. ``None`` marks a moment that is undefined for the sample.

    ``sd`` uses the n-1 denominator; skewness ``m3/m2**1.5`` and kurtosis
    ``m4/m2**2`` use population central moments (kurtosis of a normal is 3).
    """

    n: int
    mean: float
    sd: float | None
    cv: float | None
    min: float
    max: float
    skewness: float | None
    kurtosis: float | None


def descriptive_stats(values: Iterable[float | None]) -> DescriptiveStats:
    xs = available(values)
    n = len(xs)
    if n == 0:
        raise EmptySampleError("no observations")
    mean = math.fsum(xs) / n
    dev = [x - mean for x in xs]
    m2 = math.fsum(d * d for d in dev) / n
    sd = math.sqrt(m2 * n / (n - 1)) if n > 1 else None
    cv = sd / mean if sd is not None and mean != 0 else None
    if m2 > 0:
        # standardize first so tiny spreads do not underflow m2**2
        s = math.sqrt(m2)
        z = [d / s for d in dev]
        skew = math.fsum(v**3 for v in z) / n
        kurt = math.fsum(v**4 for v in z) / n
    else:
        skew = kurt = None
    # clamp the mean into [min, max] against fsum/n rounding on near-constant data
    lo, hi = min(xs), max(xs)
    return DescriptiveStats(n, min(max(mean, lo), hi), sd, cv, lo, hi, skew, kurt)


@dataclass(frozen=True)
class AnovaResult:
    k: int
    n: int
    f_stat: float
    p_value: float
    eta_squared: float
    ss_between: float
    ss_within: float

    @property
    def df_between(self) -> int:
        return self.k - 1

    @property
    def df_within(self) -> int:
        return self.n - self.k

    @property
    def infinite_f(self) -> bool:
        return math.isinf(self.f_stat)


def one_way_anova(groups: Sequence[Iterable[float | None]]) -> AnovaResult:
    """Between/within decomposition over ``groups`` with an F-test of equal means.

    Empty groups (after dropping missing values) are ignored. When the groups
    have no internal spread but different means the F statistic is reported as
    infinite with p = 0.

    Raises:
        InsufficientDataError: fewer than two non-empty groups or n <= k.
        DegenerateError: every observation is identical.
    """
    gs = [g for g in (available(g) for g in groups) if g]
    k = len(gs)
    if k < 2:
        raise InsufficientDataError(f"ANOVA needs at least 2 non-empty groups, got {k}")
    n = sum(len(g) for g in gs)
    if n <= k:
        raise InsufficientDataError(f"ANOVA needs more observations ({n}) than groups ({k})")
    grand = math.fsum(x for g in gs for x in g) / n
    means = [math.fsum(g) / len(g) for g in gs]
    ssb = math.fsum(len(g) * (m - grand) ** 2 for g, m in zip(gs, means))
    ssw = math.fsum((x - m) ** 2 for g, m in zip(gs, means) for x in g)
    sst = ssb + ssw
    if sst == 0:
        raise DegenerateError("all observations are identical")
    eta = ssb / sst
    if ssw == 0:
        return AnovaResult(k, n, math.inf, 0.0, 1.0, ssb, ssw)
    f = (ssb / (k - 1)) / (ssw / (n - k))
    return AnovaResult(k, n, f, f_upper_tail(f, k - 1, n - k), eta, ssb, ssw)


@dataclass(frozen=True)
class WelchResult:
    t_stat: float
    df: float
    p_value: float
    mean_diff: float


def welch_t_test(a: Iterable[float | None], b: Iterable[float | None]) -> WelchResult:
    """Two-sample t-test without pooling variances (Welch-Satterthwaite df)."""
    xa, xb = available(a), available(b)
    if len(xa) < 2 or len(xb) < 2:
        raise InsufficientDataError("each sample needs at least 2 observations")
    ma, mb = math.fsum(xa) / len(xa), math.fsum(xb) / len(xb)
    va = math.fsum((x - ma) ** 2 for x in xa) / (len(xa) - 1)
    vb = math.fsum((x - mb) ** 2 for x in xb) / (len(xb) - 1)
    sa, sb = va / len(xa), vb / len(xb)
    if sa + sb == 0:
        raise DegenerateError("both samples are constant")
    t = (ma - mb) / math.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa**2 / (len(xa) - 1) + sb**2 / (len(xb) - 1))
    return WelchResult(t, df, t_two_sided(t, df), ma - mb)


def pairwise_welch(groups: Mapping[str, Iterable[float | None]]) -> dict[tuple[str, str], WelchResult]:
    """Welch tests for every pair of labelled groups; pairs that cannot be tested are left out."""
    data = {k: available(v) for k, v in groups.items()}
    out = {}
    for a, b in combinations(data, 2):
        try:
            out[(a, b)] = welch_t_test(data[a], data[b])
        except (InsufficientDataError, DegenerateError):
            continue
    return out


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ascending ranks; tied values share the mean of their positions."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2.0 + 1.0
        for idx in order[i : j + 1]:
            ranks[idx] = r
        i = j + 1
    return ranks


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    n = len(x)
    mx, my = math.fsum(x) / n, math.fsum(y) / n
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = math.fsum((a - mx) ** 2 for a in x)
    syy = math.fsum((b - my) ** 2 for b in y)
    if sxx == 0 or syy == 0:
        raise DegenerateError("zero variance")
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))


@dataclass(frozen=True)
class CorrelationResult:
    n: int
    rho: float
    t_stat: float
    p_value: float

    @property
    def significant_99(self) -> bool:
        return self.p_value < SIGNIFICANCE_99


def spearman(x: Sequence[float | None], y: Sequence[float | None]) -> CorrelationResult:
    """Spearman rank correlation on pairwise-complete cases.

    The two-sided p-value uses ``t = rho * sqrt((n-2) / (1-rho**2))`` on n-2
    degrees of freedom; ``|rho| = 1`` gives p = 0.
    """
    if len(x) != len(y):
        raise ValueError("x and y differ in length")
    pairs = [(float(a), float(b)) for a, b in zip(x, y) if _present(a) and _present(b)]
    n = len(pairs)
    if n < 3:
        raise InsufficientDataError(f"need at least 3 complete pairs, got {n}")
    rx = average_ranks([p[0] for p in pairs])
    ry = average_ranks([p[1] for p in pairs])
    try:
        rho = pearson(rx, ry)
    except DegenerateError:
        raise DegenerateError("correlation undefined: one variable has constant ranks") from None
    if abs(rho) == 1.0:
        return CorrelationResult(n, rho, math.copysign(math.inf, rho), 0.0)
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return CorrelationResult(n, rho, t, t_two_sided(t, n - 2))


def competition_rank(
    values: Mapping[Hashable, float | None] | Iterable[tuple[Hashable, float | None]],
    descending: bool = True,
) -> dict[Hashable, int]:
    """Standard competition ranking ("1224"): rank = 1 + number of strictly better values.

    Keys with missing values are left out of the result.
    """
    items = values.items() if isinstance(values, Mapping) else values
    present = [(k, float(v)) for k, v in items if _present(v)]
    if not present:
        raise EmptySampleError("no non-missing values to rank")
    ordered = sorted(present, key=lambda kv: kv[1], reverse=descending)
    ranks = {}
    prev = None
    rank = 0
    for pos, (k, v) in enumerate(ordered, start=1):
        if v != prev:
            rank, prev = pos, v
        ranks[k] = rank
    return ranks


@dataclass(frozen=True)
class DistributionSummary:
    n: int
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float


def nearest_rank_quantile(sorted_values: Sequence[float], p: float) -> float:
    """Smallest observed value with at least a fraction ``p`` of the sample at or below it."""
    n = len(sorted_values)
    k = max(1, math.ceil(round(p * n, 12)))
    return sorted_values[k - 1]


def distribution_summary(values: Iterable[float | None]) -> DistributionSummary:
    xs = sorted(available(values))
    if not xs:
        raise EmptySampleError("no observations")
    return DistributionSummary(
        len(xs),
        xs[0],
        nearest_rank_quantile(xs, 0.25),
        nearest_rank_quantile(xs, 0.5),
        nearest_rank_quantile(xs, 0.75),
        xs[-1],
        math.fsum(xs) / len(xs),
    )


__all__ = [
    "AnovaResult",
    "CorrelationResult",
    "DescriptiveStats",
    "DistributionSummary",
    "WelchResult",
    "average_ranks",
    "competition_rank",
    "descriptive_stats",
    "distribution_summary",
    "f_upper_tail",
    "one_way_anova",
    "pairwise_welch",
    "spearman",
    "welch_t_test",
]
