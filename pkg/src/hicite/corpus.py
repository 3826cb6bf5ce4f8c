"""Data model, CSV ingestion and synthetic corpora.

Two input kinds are supported:

* ``articles.csv`` -- one row per research article with its citation total
  through the census year::

      journal_id,category_id,pub_year,citations

* ``journals.csv`` -- one row per journal with already computed indicators
  (the layout of a published indicator database)::

      id,title,category,n_art,jif5,jif2,h5,h3,pArt_10_5,...,pArt_40_2
"""

from __future__ import annotations

import csv
import io
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Literal, Mapping, Union

from .errors import ConfigError, RowError, SchemaError, ValidationError

DEFAULT_QS: tuple[int, ...] = (10, 20, 25, 30, 40)
DEFAULT_TS: tuple[int, ...] = (2, 3, 4, 5)

ARTICLE_HEADER = ("journal_id", "category_id", "pub_year", "citations")
JOURNAL_BASE_HEADER = ("id", "title", "category", "n_art", "jif5", "jif2", "h5", "h3")

Source = Union[bytes, str, IO[bytes], IO[str]]


def _fmt_q(q: float) -> str:
    return str(int(q)) if float(q).is_integer() else repr(float(q))


def part_column(q: float, t: int) -> str:
    return f"pArt_{_fmt_q(q)}_{t}"


def part_grid(qs: Iterable[float] = DEFAULT_QS, ts: Iterable[int] = DEFAULT_TS) -> list[tuple[float, int]]:
    """(q, t) pairs in column order: q ascending, t descending within each q."""
    return [(q, t) for q in sorted(set(qs)) for t in sorted(set(ts), reverse=True)]


PART_COLUMNS = tuple(part_column(q, t) for q, t in part_grid())
JOURNAL_HEADER = JOURNAL_BASE_HEADER + PART_COLUMNS


def _text_lines(source: Source) -> io.StringIO | IO[str]:
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8-sig"))
    if isinstance(source, str):
        return io.StringIO(source)
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    return io.StringIO(data)


# --- article level -----------------------------------------------------------------


@dataclass(frozen=True)
class ArticleRecord:
    journal_id: str
    category_id: str
    pub_year: int
    citations: int

    def __post_init__(self):
        if self.citations < 0:
            raise ValidationError(f"negative citation count {self.citations}")


@dataclass(frozen=True)
class ArticleCorpus:
    """Immutable pool of articles with citations counted through ``census_year``."""

    census_year: int
    records: tuple[ArticleRecord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        for rec in self.records:
            if rec.pub_year > self.census_year:
                raise ValidationError(
                    f"pub_year {rec.pub_year} is after census year {self.census_year}"
                )

    def __len__(self) -> int:
        return len(self.records)

    @cached_property
    def by_cell(self) -> dict[tuple[str, int], tuple[int, ...]]:
        """Citation counts grouped by (category_id, pub_year)."""
        cells: dict[tuple[str, int], list[int]] = defaultdict(list)
        for rec in self.records:
            cells[(rec.category_id, rec.pub_year)].append(rec.citations)
        return {k: tuple(v) for k, v in cells.items()}

    @cached_property
    def by_journal_year(self) -> dict[tuple[str, int], tuple[ArticleRecord, ...]]:
        groups: dict[tuple[str, int], list[ArticleRecord]] = defaultdict(list)
        for rec in self.records:
            groups[(rec.journal_id, rec.pub_year)].append(rec)
        return {k: tuple(v) for k, v in groups.items()}

    @cached_property
    def journal_ids(self) -> tuple[str, ...]:
        return tuple(sorted({rec.journal_id for rec in self.records}))

    @cached_property
    def category_ids(self) -> tuple[str, ...]:
        return tuple(sorted({rec.category_id for rec in self.records}))

    @cached_property
    def journal_category(self) -> dict[str, str]:
        """Most frequent category of each journal (ties broken by category id)."""
        counts: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
        for rec in self.records:
            counts[rec.journal_id][rec.category_id] += 1
        return {
            j: min(c.items(), key=lambda kv: (-kv[1], kv[0]))[0] for j, c in counts.items()
        }

    def journal_articles(self, journal_id: str, first_year: int, last_year: int) -> list[ArticleRecord]:
        out: list[ArticleRecord] = []
        for year in range(first_year, last_year + 1):
            out.extend(self.by_journal_year.get((journal_id, year), ()))
        return out

    def merged(self, other: "ArticleCorpus") -> "ArticleCorpus":
        if other.census_year != self.census_year:
            raise ValidationError("cannot merge corpora with different census years")
        return ArticleCorpus(self.census_year, self.records + other.records)


def parse_article_corpus(source: Source, census_year: int) -> ArticleCorpus:
    """Read an ``articles.csv`` stream.

    Raises:
        SchemaError: header differs from ``journal_id,category_id,pub_year,citations``.
        RowError: a field is missing or not an integer (line numbers are 1-based,
            the header being line 1).
        ValidationError: a negative citation count or a publication year after
            ``census_year``.
    """
    reader = csv.reader(_text_lines(source))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != ARTICLE_HEADER:
        raise SchemaError(f"expected header {','.join(ARTICLE_HEADER)!r}, got {header!r}")
    records = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise RowError(line, f"expected 4 fields, got {len(row)}")
        journal_id, category_id, year_s, cites_s = (f.strip() for f in row)
        try:
            year = int(year_s)
        except ValueError:
            raise RowError(line, f"pub_year {year_s!r} is not an integer") from None
        try:
            cites = int(cites_s)
        except ValueError:
            raise RowError(line, f"citations {cites_s!r} is not an integer") from None
        if cites < 0:
            raise ValidationError(f"negative citation count {cites}", line)
        if year > census_year:
            raise ValidationError(f"pub_year {year} is after census year {census_year}", line)
        records.append(ArticleRecord(journal_id, category_id, year, cites))
    return ArticleCorpus(census_year, tuple(records))


def write_article_corpus(corpus: ArticleCorpus) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ARTICLE_HEADER)
    for rec in corpus.records:
        writer.writerow((rec.journal_id, rec.category_id, rec.pub_year, rec.citations))
    return buf.getvalue()


@dataclass(frozen=True)
class ValidationReport:
    min_articles: int
    small_cells: tuple[tuple[str, int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.small_cells


def validate_corpus(corpus: ArticleCorpus, min_articles: int = 10) -> ValidationReport:
    """Flag (category, year) cells whose size makes percentile thresholds degenerate.

    Informational only; nothing downstream consults the report.
    """
    small = tuple(
        (cat, year, len(cites))
        for (cat, year), cites in sorted(corpus.by_cell.items())
        if len(cites) < min_articles
    )
    return ValidationReport(min_articles, small)


# --- journal level -----------------------------------------------------------------


@dataclass(frozen=True)
class JournalIndicatorRow:
    """Indicators for one journal.

    ``jif5``/``jif2`` and individual ``part`` cells may be ``None`` (missing);
    missing is never the same thing as zero.
    """

    journal_id: str
    title: str
    category_id: str
    n_articles: int
    jif5: float | None
    jif2: float | None
    h5: int
    h3: int
    part: Mapping[tuple[float, int], float | None] = field(default_factory=dict)

    def __post_init__(self):
        for (q, t), v in self.part.items():
            if v is not None and not 0.0 <= v <= 1.0:
                raise ValidationError(f"{self.journal_id}: {part_column(q, t)}={v} outside [0, 1]")

    def value(self, variable: str) -> float | None:
        """Value of a named variable (``jif5``, ``h3``, ``pArt_25_4`` ...)."""
        if variable in ("jif5", "jif2", "h5", "h3"):
            v = getattr(self, variable)
            return None if v is None else float(v)
        if variable == "n_art":
            return float(self.n_articles)
        q, t = parse_part_column(variable)
        return self.part.get((q, t))


def parse_part_column(name: str) -> tuple[float, int]:
    try:
        prefix, q, t = name.split("_")
        if prefix != "pArt":
            raise ValueError
        qv = float(q)
        return (int(qv) if qv.is_integer() else qv), int(t)
    except ValueError:
        raise KeyError(f"unknown variable {name!r}") from None


@dataclass(frozen=True)
class JournalIndicatorTable:
    rows: tuple[JournalIndicatorRow, ...]
    provenance: Literal["ingested", "computed"] = "ingested"

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        seen = set()
        for row in self.rows:
            if row.journal_id in seen:
                raise ValidationError(f"duplicate journal id {row.journal_id!r}")
            seen.add(row.journal_id)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, journal_id: str) -> JournalIndicatorRow:
        for row in self.rows:
            if row.journal_id == journal_id:
                return row
        raise KeyError(journal_id)

    @property
    def categories(self) -> list[str]:
        return sorted({r.category_id for r in self.rows}, key=_natural_key)

    @property
    def part_keys(self) -> list[tuple[float, int]]:
        keys = {k for r in self.rows for k in r.part}
        return sorted(keys, key=lambda k: (k[0], -k[1]))

    @property
    def variables(self) -> list[str]:
        return ["jif5", "jif2", "h5", "h3"] + [part_column(q, t) for q, t in self.part_keys]

    def column(self, variable: str) -> list[float | None]:
        return [r.value(variable) for r in self.rows]

    def in_category(self, category_id: str) -> "JournalIndicatorTable":
        return JournalIndicatorTable(
            tuple(r for r in self.rows if r.category_id == category_id), self.provenance
        )

    def merged(self, other: "JournalIndicatorTable") -> "JournalIndicatorTable":
        prov = self.provenance if self.provenance == other.provenance else "ingested"
        return JournalIndicatorTable(self.rows + other.rows, prov)


def _natural_key(s: str):
    return (0, int(s), "") if s.isdigit() else (1, 0, s)


def _opt_float(s: str, line: int, name: str) -> float | None:
    if s == "":
        return None
    try:
        v = float(s)
    except ValueError:
        raise RowError(line, f"{name} {s!r} is not a number") from None
    if not math.isfinite(v) or v < 0:
        raise ValidationError(f"{name}={s} must be a finite non-negative number", line)
    return v


def _int(s: str, line: int, name: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise RowError(line, f"{name} {s!r} is not an integer") from None
    if v < 0:
        raise ValidationError(f"{name}={v} is negative", line)
    return v


def parse_journal_indicator_table(source: Source) -> JournalIndicatorTable:
    """Read a ``journals.csv`` stream into an ingested table.

    Empty ``jif5``/``jif2`` cells are read as missing. An empty ``pArt`` cell is
    also read as missing (a truncated source column); any present ``pArt`` value
    must lie in [0, 1].
    """
    reader = csv.reader(_text_lines(source))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != JOURNAL_HEADER:
        raise SchemaError(f"expected header {','.join(JOURNAL_HEADER)!r}, got {header!r}")
    grid = part_grid()
    rows = []
    seen: dict[str, int] = {}
    for line, raw in enumerate(reader, start=2):
        if not raw:
            continue
        if len(raw) != len(JOURNAL_HEADER):
            raise RowError(line, f"expected {len(JOURNAL_HEADER)} fields, got {len(raw)}")
        f = [c.strip() for c in raw]
        jid = f[0]
        if jid in seen:
            raise ValidationError(f"duplicate id {jid!r} (first seen on line {seen[jid]})", line)
        seen[jid] = line
        part = {}
        for (q, t), cell in zip(grid, f[8:]):
            v = _opt_float(cell, line, part_column(q, t))
            if v is not None and v > 1.0:
                raise ValidationError(f"{part_column(q, t)}={cell} outside [0, 1]", line)
            part[(q, t)] = v
        rows.append(
            JournalIndicatorRow(
                journal_id=jid,
                title=f[1],
                category_id=f[2],
                n_articles=_int(f[3], line, "n_art"),
                jif5=_opt_float(f[4], line, "jif5"),
                jif2=_opt_float(f[5], line, "jif2"),
                h5=_int(f[6], line, "h5"),
                h3=_int(f[7], line, "h3"),
                part=part,
            )
        )
    return JournalIndicatorTable(tuple(rows), "ingested")


def _fmt_num(v: float | None, decimals: int | None) -> str:
    if v is None:
        return ""
    if decimals is None:
        return repr(float(v))
    return f"{v:.{decimals}f}"


def write_journal_indicator_table(table: JournalIndicatorTable, decimals: int | None = None) -> str:
    """Serialize to the ``journals.csv`` layout.

    Tables computed on a non-default (q, t) grid get matching ``pArt`` columns;
    only the default grid re-parses with :func:`parse_journal_indicator_table`.
    ``decimals=None`` keeps full precision.
    """
    keys = table.part_keys or part_grid()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(JOURNAL_BASE_HEADER + tuple(part_column(q, t) for q, t in keys))
    for r in table.rows:
        writer.writerow(
            [r.journal_id, r.title, r.category_id, r.n_articles,
             _fmt_num(r.jif5, decimals), _fmt_num(r.jif2, decimals), r.h5, r.h3]
            + [_fmt_num(r.part.get(k), decimals) for k in keys]
        )
    return buf.getvalue()


# --- synthetic corpora -------------------------------------------------------------

Distribution = Literal["uniform", "geometric", "lognormal"]


@dataclass(frozen=True)
class SyntheticConfig:
    """Recipe for a reproducible random corpus.

    ``citation_params`` depend on ``citation_distribution``:

    * ``uniform``: ``(low, high)`` inclusive integer bounds
    * ``geometric``: ``(p,)`` success probability in (0, 1]; draws count failures
    * ``lognormal``: ``(mu, sigma)``; draws are ``floor(exp(N(mu, sigma)))``

    ``max_citations`` optionally caps every draw.
    """

    n_categories: int = 2
    journals_per_category: int = 3
    articles_per_journal_range: tuple[int, int] = (5, 20)
    pub_year_range: tuple[int, int] = (2009, 2013)
    citation_distribution: Distribution = "geometric"
    citation_params: tuple[float, ...] = (0.15,)
    seed: int = 0
    census_year: int | None = None
    max_citations: int | None = None

    def validate(self) -> None:
        if self.n_categories < 1 or self.journals_per_category < 1:
            raise ConfigError("category and journal counts must be >= 1")
        lo, hi = self.articles_per_journal_range
        if lo < 1 or hi < lo:
            raise ConfigError(f"bad articles_per_journal_range {self.articles_per_journal_range}")
        y0, y1 = self.pub_year_range
        if y1 < y0:
            raise ConfigError(f"empty pub_year_range {self.pub_year_range}")
        if self.census_year is not None and self.census_year < y1:
            raise ConfigError("census_year precedes the last publication year")
        if self.max_citations is not None and self.max_citations < 0:
            raise ConfigError("max_citations must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        p = self.citation_params
        dist = self.citation_distribution
        if dist == "uniform":
            if len(p) != 2 or int(p[0]) != p[0] or int(p[1]) != p[1] or not 0 <= p[0] <= p[1]:
                raise ConfigError(f"uniform needs integer 0 <= low <= high, got {p}")
        elif dist == "geometric":
            if len(p) != 1 or not 0 < p[0] <= 1:
                raise ConfigError(f"geometric needs p in (0, 1], got {p}")
        elif dist == "lognormal":
            if len(p) != 2 or not p[1] > 0 or not math.isfinite(p[0]):
                raise ConfigError(f"lognormal needs finite mu and sigma > 0, got {p}")
        else:
            raise ConfigError(f"unknown citation distribution {dist!r}")


def _draw(rng: random.Random, cfg: SyntheticConfig) -> int:
    p = cfg.citation_params
    if cfg.citation_distribution == "uniform":
        c = rng.randint(int(p[0]), int(p[1]))
    elif cfg.citation_distribution == "geometric":
        if p[0] == 1:
            c = 0
        else:
            u = 1.0 - rng.random()  # (0, 1]
            c = int(math.floor(math.log(u) / math.log1p(-p[0])))
    else:
        c = int(math.floor(rng.lognormvariate(p[0], p[1])))
    if cfg.max_citations is not None:
        c = min(c, cfg.max_citations)
    return c


def generate_synthetic_corpus(config: SyntheticConfig) -> ArticleCorpus:
    """Deterministic random corpus: same config (including seed), same records."""
    config.validate()
    rng = random.Random(config.seed)
    y0, y1 = config.pub_year_range
    records = []
    for c in range(config.n_categories):
        cat = f"C{c + 1}"
        for j in range(config.journals_per_category):
            jid = f"{cat}J{j + 1}"
            n = rng.randint(*config.articles_per_journal_range)
            for _ in range(n):
                records.append(ArticleRecord(jid, cat, rng.randint(y0, y1), _draw(rng, config)))
    census = config.census_year if config.census_year is not None else y1
    return ArticleCorpus(census, tuple(records))
