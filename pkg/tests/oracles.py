"""Brute-force definitions used as independent checks.

Nothing here sorts, caches or reuses package code paths: every value is
recomputed straight from the definitions by exhaustive scans.
"""

from fractions import Fraction


def rank_position(q, n):
    # smallest integer k with k >= q * n / 100
    k = 0
    target = Fraction(q) * n / 100
    while k < target:
        k += 1
    return max(k, 1)


def threshold(cell, q):
    """Largest observed value v such that at least k values are >= v."""
    k = rank_position(q, len(cell))
    return max(v for v in cell if sum(1 for c in cell if c >= v) >= k)


def cell_of(records, category_id, pub_year):
    return [r.citations for r in records if r.category_id == category_id and r.pub_year == pub_year]


def highly_cited_count(records, journal_id, pub_year, q):
    n = 0
    for r in records:
        if r.journal_id == journal_id and r.pub_year == pub_year:
            if r.citations >= threshold(cell_of(records, r.category_id, r.pub_year), q):
                n += 1
    return n


def part(records, journal_id, q, t, census_year):
    num = den = 0
    for r in records:
        if r.journal_id != journal_id or not census_year - t + 1 <= r.pub_year <= census_year:
            continue
        den += 1
        if r.citations >= threshold(cell_of(records, r.category_id, r.pub_year), q):
            num += 1
    return (num, den)


def h_index(values):
    values = list(values)
    return max(h for h in range(len(values) + 1) if sum(1 for v in values if v >= h) >= h)


def h_index_rows(matrix):
    """Definition-level h for every row of a 2-D array; negative entries are padding."""
    import numpy as np

    h = np.zeros(len(matrix), dtype=np.int64)
    for cand in range(1, matrix.shape[1] + 1):
        ok = (matrix >= cand).sum(axis=1) >= cand
        h[ok] = cand
    return h
