"""Percentile thresholds, the highly-cited share per journal, h-indices and citation rates.

An article is *highly cited at level q* when its citation total is at least the
citation count of the article sitting at nearest-rank position
``ceil(q * N / 100)`` of its (category, publication year) cell, ordered from
most to least cited. Ties at the threshold all qualify, so a cell's qualifying
fraction can exceed ``q / 100``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .corpus import (
    DEFAULT_QS,
    DEFAULT_TS,
    ArticleCorpus,
    JournalIndicatorRow,
    JournalIndicatorTable,
    part_column,
)
from .errors import NoDataError, UndefinedIndicatorError

H_LONG_WINDOW = 5
H_SHORT_WINDOW = 3


def _check_q(q: float) -> None:
    if not 0 < q <= 100:
        raise ValueError(f"percentile q={q} must lie in (0, 100]")


def nearest_rank(q: float, n: int) -> int:
    """1-based rank ``ceil(q * n / 100)``, computed exactly."""
    _check_q(q)
    return max(1, math.ceil(Fraction(repr(q) if isinstance(q, float) else q) * n / 100))


def threshold_of(citations: Iterable[int], q: float) -> int:
    ordered = sorted(citations, reverse=True)
    if not ordered:
        raise NoDataError("empty cell")
    return ordered[nearest_rank(q, len(ordered)) - 1]


def citation_threshold(corpus: ArticleCorpus, category_id: str, pub_year: int, q: float) -> int:
    """Minimum citations needed to be among the top ``q`` percent of a cell."""
    _check_q(q)
    cell = corpus.by_cell.get((category_id, pub_year))
    if not cell:
        raise NoDataError(f"no articles in category {category_id!r}, year {pub_year}")
    return threshold_of(cell, q)


@dataclass(frozen=True)
class ThresholdTable:
    census_year: int
    entries: dict[tuple[str, int, float], int]
    cell_sizes: dict[tuple[str, int], int]

    def get(self, category_id: str, pub_year: int, q: float) -> int:
        try:
            return self.entries[(category_id, pub_year, q)]
        except KeyError:
            raise NoDataError(
                f"no threshold for category {category_id!r}, year {pub_year}, q={q}"
            ) from None

    def rows(self) -> list[tuple[str, int, float, int, int]]:
        """``(category_id, pub_year, q, min_citations, n_articles)`` sorted by cell then q."""
        return [
            (cat, year, q, m, self.cell_sizes[(cat, year)])
            for (cat, year, q), m in sorted(self.entries.items())
        ]


def build_threshold_table(corpus: ArticleCorpus, qs: Iterable[float] = DEFAULT_QS) -> ThresholdTable:
    qs = list(qs)
    if not qs:
        raise ValueError("qs must be non-empty")
    for q in qs:
        _check_q(q)
    entries = {}
    sizes = {}
    for (cat, year), cell in corpus.by_cell.items():
        ordered = sorted(cell, reverse=True)
        sizes[(cat, year)] = len(ordered)
        for q in qs:
            entries[(cat, year, q)] = ordered[nearest_rank(q, len(ordered)) - 1]
    return ThresholdTable(corpus.census_year, entries, sizes)


def highly_cited_count(
    corpus: ArticleCorpus, thresholds: ThresholdTable, journal_id: str, pub_year: int, q: float
) -> int:
    """Number of the journal's ``pub_year`` articles at or above their cell's threshold."""
    count = 0
    for rec in corpus.by_journal_year.get((journal_id, pub_year), ()):
        if rec.citations >= thresholds.get(rec.category_id, pub_year, q):
            count += 1
    return count


@dataclass(frozen=True)
class PartResult:
    journal_id: str
    q: float
    t: int
    census_year: int
    numerator: int
    denominator: int

    @property
    def value(self) -> float:
        return self.numerator / self.denominator


def window_years(census_year: int, t: int) -> range:
    if t < 1:
        raise ValueError(f"window length t={t} must be >= 1")
    return range(census_year - t + 1, census_year + 1)


def part_indicator(
    corpus: ArticleCorpus,
    thresholds: ThresholdTable,
    journal_id: str,
    q: float,
    t: int,
    census_year: int | None = None,
) -> PartResult:
    """Share of a journal's articles from the last ``t`` years that are highly cited at ``q``.

    Raises:
        UndefinedIndicatorError: the journal has no articles in the window.
    """
    nu = corpus.census_year if census_year is None else census_year
    if nu != corpus.census_year:
        raise ValueError(f"census year {nu} differs from corpus census year {corpus.census_year}")
    num = den = 0
    for year in window_years(nu, t):
        articles = corpus.by_journal_year.get((journal_id, year), ())
        den += len(articles)
        for rec in articles:
            if rec.citations >= thresholds.get(rec.category_id, year, q):
                num += 1
    if den == 0:
        raise UndefinedIndicatorError(
            f"journal {journal_id!r} published nothing in {nu - t + 1}-{nu}"
        )
    return PartResult(journal_id, q, t, nu, num, den)


def h_index(citations: Iterable[int]) -> int:
    """Largest h such that h of the values are >= h (0 for no values)."""
    h = 0
    for i, c in enumerate(sorted(citations, reverse=True), start=1):
        if c < i:
            break
        h = i
    return h


def windowed_h_index(corpus: ArticleCorpus, journal_id: str, first_year: int, last_year: int) -> int:
    if first_year > last_year:
        raise ValueError(f"empty window [{first_year}, {last_year}]")
    return h_index(r.citations for r in corpus.journal_articles(journal_id, first_year, last_year))


@dataclass(frozen=True)
class CitationRateResult:
    scope: Literal["category", "journal"]
    scope_id: str
    pub_year: int
    mean_citations: float
    n_articles: int


def mean_citation_rate(
    corpus: ArticleCorpus,
    pub_year: int,
    *,
    category_id: str | None = None,
    journal_id: str | None = None,
) -> CitationRateResult:
    """Average citations per article published in ``pub_year`` within a category or a journal."""
    if (category_id is None) == (journal_id is None):
        raise ValueError("give exactly one of category_id or journal_id")
    if category_id is not None:
        cites = list(corpus.by_cell.get((category_id, pub_year), ()))
        scope, sid = "category", category_id
    else:
        cites = [r.citations for r in corpus.by_journal_year.get((journal_id, pub_year), ())]
        scope, sid = "journal", journal_id
    if not cites:
        raise NoDataError(f"no articles for {scope} {sid!r} in {pub_year}")
    return CitationRateResult(scope, sid, pub_year, math.fsum(cites) / len(cites), len(cites))


def compute_indicator_table(
    corpus: ArticleCorpus,
    qs: Iterable[float] = DEFAULT_QS,
    ts: Iterable[int] = DEFAULT_TS,
    census_year: int | None = None,
) -> JournalIndicatorTable:
    """Assemble one indicator row per journal from article-level data.

    ``n_articles`` and ``h5`` cover the five years ending at the census year,
    ``h3`` the last three. A window in which the journal published nothing
    leaves that ``pArt`` cell missing. Impact factors are never fabricated.
    """
    qs, ts = list(qs), list(ts)
    if not qs or not ts:
        raise ValueError("qs and ts must be non-empty")
    nu = corpus.census_year if census_year is None else census_year
    if nu != corpus.census_year:
        raise ValueError(f"census year {nu} differs from corpus census year {corpus.census_year}")
    thresholds = build_threshold_table(corpus, qs)
    rows = []
    for jid in corpus.journal_ids:
        part: dict[tuple[float, int], float | None] = {}
        for q in sorted(set(qs)):
            for t in sorted(set(ts), reverse=True):
                try:
                    part[(q, t)] = part_indicator(corpus, thresholds, jid, q, t, nu).value
                except UndefinedIndicatorError:
                    part[(q, t)] = None
        rows.append(
            JournalIndicatorRow(
                journal_id=jid,
                title=jid,
                category_id=corpus.journal_category[jid],
                n_articles=len(corpus.journal_articles(jid, nu - H_LONG_WINDOW + 1, nu)),
                jif5=None,
                jif2=None,
                h5=windowed_h_index(corpus, jid, nu - H_LONG_WINDOW + 1, nu),
                h3=windowed_h_index(corpus, jid, nu - H_SHORT_WINDOW + 1, nu),
                part=part,
            )
        )
    return JournalIndicatorTable(tuple(rows), "computed")


__all__ = [
    "CitationRateResult",
    "PartResult",
    "ThresholdTable",
    "build_threshold_table",
    "citation_threshold",
    "compute_indicator_table",
    "h_index",
    "highly_cited_count",
    "mean_citation_rate",
    "nearest_rank",
    "part_column",
    "part_indicator",
    "windowed_h_index",
]
