"""Command-line front end and table builders.

Each ``run_*`` function returns :class:`Report` objects (named tables) that
serialize to CSV (three decimals) or JSON (full precision) with identical
column names.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .corpus import (
    DEFAULT_QS,
    DEFAULT_TS,
    ArticleCorpus,
    JournalIndicatorTable,
    parse_article_corpus,
    parse_journal_indicator_table,
    part_column,
    validate_corpus,
    write_journal_indicator_table,
)
from .errors import (
    CapabilityError,
    DegenerateError,
    EmptySampleError,
    HiciteError,
    InsufficientDataError,
)
from .indicators import build_threshold_table, compute_indicator_table, mean_citation_rate
from .stats import (
    competition_rank,
    descriptive_stats,
    distribution_summary,
    one_way_anova,
    pairwise_welch,
    spearman,
)

log = logging.getLogger("hicite")

DISPLAY_DECIMALS = 3
CORRELATION_VARIABLES = ("jif2", "jif5", "h3", "h5", "pArt_10_2", "pArt_40_5")
RANKING_VARIABLES = ("jif5", "jif2", "h5", "h3", "pArt_20_2", "pArt_40_5")
FIGURE3_VARIABLES = ("jif5", "jif2", "h5", "h3", "pArt_10_2", "pArt_40_5")
POSTHOC_ALPHA = 0.05
REPORTS = ("descriptives", "anova", "correlations", "rankings", "figures")


@dataclass
class Report:
    name: str
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)

    def to_csv(self, decimals: int = DISPLAY_DECIMALS) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_display(row.get(c), decimals) for c in self.columns])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [{c: _jsonable(row.get(c)) for c in self.columns} for row in self.rows]
        return json.dumps({"name": self.name, "columns": self.columns, "rows": rows}, indent=2) + "\n"


def _display(v: Any, decimals: int) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.{decimals}f}"
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def ordered_variables(table: JournalIndicatorTable) -> list[str]:
    """JIF5, JIF2, h5, h3, then pArt by ascending q and descending t."""
    return table.variables


# --- descriptives -----------------------------------------------------------------

DESCRIPTIVE_COLUMNS = ["variable", "obs", "mean", "sd", "cv", "min", "max", "skewness", "kurtosis"]


def _descriptive_rows(table: JournalIndicatorTable, variables: Sequence[str], category: str | None):
    rows = []
    for var in variables:
        try:
            s = descriptive_stats(table.column(var))
        except EmptySampleError:
            log.warning("no observations for %s%s", var, f" in category {category}" if category else "")
            continue
        row = {
            "variable": var, "obs": s.n, "mean": s.mean, "sd": s.sd, "cv": s.cv,
            "min": s.min, "max": s.max, "skewness": s.skewness, "kurtosis": s.kurtosis,
        }
        if category is not None:
            row["category"] = category
        rows.append(row)
    return rows


def run_descriptives_report(
    table: JournalIndicatorTable, per_category: bool = False, variables: Sequence[str] | None = None
) -> Report:
    if not len(table):
        raise EmptySampleError("journal table is empty")
    variables = list(variables or ordered_variables(table))
    if not per_category:
        return Report("descriptives", DESCRIPTIVE_COLUMNS, _descriptive_rows(table, variables, None))
    rows = []
    for cat in table.categories:
        rows.extend(_descriptive_rows(table.in_category(cat), variables, cat))
    return Report("descriptives_by_category", ["category"] + DESCRIPTIVE_COLUMNS, rows)


# --- ANOVA --------------------------------------------------------------------------


def run_anova_report(
    table: JournalIndicatorTable, variables: Sequence[str] | None = None
) -> list[Report]:
    """Per-variable one-way ANOVA across categories plus the homogeneity summary.

    Returns three reports: ``anova`` (eta squared, F, p per variable),
    ``anova_summary`` (the ``pArt`` variable with the largest p, i.e. the most
    homogeneous across categories) and ``anova_pairwise`` (Welch t-tests
    between category pairs at the 5% level).
    """
    cats = table.categories
    if len(cats) < 2:
        raise InsufficientDataError(f"ANOVA needs at least 2 categories, got {len(cats)}")
    variables = list(variables or ordered_variables(table))
    main = Report("anova", ["variable", "obs", "eta_squared", "f", "p", "status"])
    pair = Report(
        "anova_pairwise",
        ["variable", "category_a", "category_b", "mean_diff", "t", "df", "p", "significant_05"],
    )
    best: tuple[str, float] | None = None
    by_cat = {c: table.in_category(c) for c in cats}
    for var in variables:
        groups = {c: by_cat[c].column(var) for c in cats}
        try:
            res = one_way_anova(list(groups.values()))
        except (InsufficientDataError, DegenerateError) as exc:
            log.warning("ANOVA for %s skipped: %s", var, exc)
            main.rows.append({"variable": var, "status": f"degenerate: {exc}"})
            continue
        main.rows.append({
            "variable": var, "obs": res.n, "eta_squared": res.eta_squared,
            "f": res.f_stat, "p": res.p_value, "status": "infinite F" if res.infinite_f else "ok",
        })
        if var.startswith("pArt_") and (best is None or res.p_value > best[1]):
            best = (var, res.p_value)
        for (a, b), w in pairwise_welch(groups).items():
            pair.rows.append({
                "variable": var, "category_a": a, "category_b": b, "mean_diff": w.mean_diff,
                "t": w.t_stat, "df": w.df, "p": w.p_value, "significant_05": w.p_value < POSTHOC_ALPHA,
            })
    summary = Report("anova_summary", ["criterion", "variable", "p"])
    if best is not None:
        summary.rows.append({"criterion": "highest_p_among_pArt", "variable": best[0], "p": best[1]})
    return [main, summary, pair]


# --- correlations -------------------------------------------------------------------

CORRELATION_COLUMNS = ["row", "col", "n", "rho", "t", "p", "significant_99", "status"]


def _correlation_rows(table: JournalIndicatorTable, variables: Sequence[str], category: str | None):
    rows = []
    cols = {v: table.column(v) for v in variables}
    for i, a in enumerate(variables):
        for b in variables[: i + 1]:
            row: dict[str, Any] = {"row": a, "col": b}
            if category is not None:
                row["category"] = category
            try:
                r = spearman(cols[a], cols[b])
                row.update(n=r.n, rho=r.rho, t=r.t_stat, p=r.p_value,
                           significant_99=r.significant_99, status="ok")
            except (InsufficientDataError, DegenerateError) as exc:
                row["status"] = f"unavailable: {exc}"
            rows.append(row)
    return rows


def run_correlation_report(
    table: JournalIndicatorTable,
    variables: Sequence[str] = CORRELATION_VARIABLES,
    per_category: bool = True,
) -> Report:
    """Lower-triangular Spearman matrices (diagonal included), one per category."""
    variables = list(variables)
    if not per_category:
        return Report("correlations", CORRELATION_COLUMNS, _correlation_rows(table, variables, None))
    rows = []
    for cat in table.categories:
        rows.extend(_correlation_rows(table.in_category(cat), variables, cat))
    return Report("correlations_by_category", ["category"] + CORRELATION_COLUMNS, rows)


# --- rankings -----------------------------------------------------------------------


def category_ranks(table: JournalIndicatorTable, variable: str) -> dict[str, int]:
    """Competition rank of every journal within its own category (best = 1)."""
    ranks: dict[str, int] = {}
    for cat in table.categories:
        sub = table.in_category(cat)
        try:
            ranks.update(competition_rank([(r.journal_id, r.value(variable)) for r in sub.rows]))
        except EmptySampleError:
            continue
    return ranks


def run_ranking_report(
    table: JournalIndicatorTable, variables: Sequence[str] = RANKING_VARIABLES
) -> Report:
    if not len(table):
        raise EmptySampleError("journal table is empty")
    variables = list(variables)
    ranks = {v: category_ranks(table, v) for v in variables}
    report = Report("rankings", ["id", "title", "category"] + variables)
    for cat in table.categories:
        for r in table.in_category(cat).rows:
            row = {"id": r.journal_id, "title": r.title, "category": cat}
            row.update({v: ranks[v].get(r.journal_id) for v in variables})
            report.rows.append(row)
    return report


# --- figure data --------------------------------------------------------------------


def figure1_report(corpus: ArticleCorpus) -> Report:
    report = Report("fig1_mean_citations", ["category", "pub_year", "mean", "n"])
    for cat, year in sorted(corpus.by_cell):
        res = mean_citation_rate(corpus, year, category_id=cat)
        report.rows.append({"category": cat, "pub_year": year, "mean": res.mean_citations, "n": res.n_articles})
    return report


def figure2_report(corpus: ArticleCorpus, qs: Iterable[float] = DEFAULT_QS) -> Report:
    report = Report("fig2_thresholds", ["category_id", "pub_year", "q", "min_citations", "n_articles"])
    for cat, year, q, m, n in build_threshold_table(corpus, qs).rows():
        report.rows.append({"category_id": cat, "pub_year": year, "q": q, "min_citations": m, "n_articles": n})
    return report


def figure3_report(table: JournalIndicatorTable, variables: Sequence[str] = FIGURE3_VARIABLES) -> Report:
    report = Report("fig3_distributions", ["category", "variable", "min", "q1", "median", "q3", "max", "mean"])
    for cat in table.categories:
        sub = table.in_category(cat)
        for var in variables:
            try:
                s = distribution_summary(sub.column(var))
            except (EmptySampleError, KeyError):
                continue
            report.rows.append({
                "category": cat, "variable": var, "min": s.min, "q1": s.q1,
                "median": s.median, "q3": s.q3, "max": s.max, "mean": s.mean,
            })
    return report


def run_figure_data_export(
    source: ArticleCorpus | JournalIndicatorTable,
    figures: Iterable[int] = (1, 2, 3),
    qs: Iterable[float] = DEFAULT_QS,
    ts: Iterable[int] = DEFAULT_TS,
) -> list[Report]:
    """Data behind the three figures; plotting is left to external tools.

    Figures 1 and 2 need article-level data; figure 3 accepts either input.
    """
    figures = sorted(set(figures))
    is_corpus = isinstance(source, ArticleCorpus)
    if not is_corpus and {1, 2} & set(figures):
        raise CapabilityError(
            "figures 1 and 2 need article-level data (--kind articles); "
            "a journal indicator table only supports figure 3"
        )
    out = []
    if 1 in figures:
        out.append(figure1_report(source))
    if 2 in figures:
        out.append(figure2_report(source, qs))
    if 3 in figures:
        table = compute_indicator_table(source, qs, ts) if is_corpus else source
        out.append(figure3_report(table))
    return out


# --- CLI ----------------------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}") from None
    if not vals or any(not 0 < v <= 100 for v in vals):
        raise argparse.ArgumentTypeError("percentiles must lie in (0, 100]")
    return [int(v) if v.is_integer() else v for v in vals]


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("window lengths must be >= 1")
    return vals


def _year(text: str) -> int:
    try:
        y = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a year: {text!r}") from None
    if not 1900 <= y <= 2200:
        raise argparse.ArgumentTypeError(f"implausible census year {y}")
    return y


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hicite",
        description="Percentage of highly cited articles, h-indices and their validation statistics.",
    )
    p.add_argument("--input", action="append", required=True, metavar="PATH",
                   help="input CSV (repeatable; inputs of one kind are concatenated)")
    p.add_argument("--kind", choices=("articles", "journal-table"), default="journal-table")
    p.add_argument("--census", type=_year, default=2013, metavar="YEAR",
                   help="census year for article input (default: 2013)")
    p.add_argument("--q", type=_float_list, default=list(DEFAULT_QS), metavar="LIST",
                   help="citation percentiles, e.g. 10,20,25,30,40")
    p.add_argument("--t", type=_int_list, default=list(DEFAULT_TS), metavar="LIST",
                   help="window lengths in years, e.g. 2,3,4,5")
    p.add_argument("--report", action="append", choices=REPORTS + ("all",),
                   help="report to produce (repeatable; default: all)")
    p.add_argument("--per-category", action="store_true",
                   help="descriptives per category instead of aggregated")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="DIR", help="write one file per table here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load(args) -> ArticleCorpus | JournalIndicatorTable:
    loaded = None
    for path in args.input:
        with open(path, "rb") as fh:
            if args.kind == "articles":
                part = parse_article_corpus(fh, args.census)
            else:
                part = parse_journal_indicator_table(fh)
        loaded = part if loaded is None else loaded.merged(part)
    return loaded


def produce_reports(data, selected: Sequence[str], args) -> list[Report]:
    if isinstance(data, ArticleCorpus):
        for cat, year, n in validate_corpus(data).small_cells:
            log.warning("cell %s/%s has only %d articles; its thresholds are coarse", cat, year, n)
        table = compute_indicator_table(data, args.q, args.t)
    else:
        table = data
    reports: list[Report] = []
    if "descriptives" in selected:
        reports.append(run_descriptives_report(table, per_category=args.per_category))
    if "anova" in selected:
        reports.extend(run_anova_report(table))
    if "correlations" in selected:
        reports.append(run_correlation_report(table))
    if "rankings" in selected:
        reports.append(run_ranking_report(table))
    if "figures" in selected:
        figs = (1, 2, 3) if isinstance(data, ArticleCorpus) else (3,)
        reports.extend(run_figure_data_export(data, figs, args.q, args.t))
    return reports


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI. Exit status: 0 success, 1 data/validation error, 2 usage error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    selected = REPORTS if not args.report or "all" in args.report else tuple(args.report)
    try:
        data = _load(args)
        reports = produce_reports(data, selected, args)
    except OSError as exc:
        print(f"hicite: {exc}", file=sys.stderr)
        return 1
    except HiciteError as exc:
        print(f"hicite: {exc}", file=sys.stderr)
        return 1
    if isinstance(data, ArticleCorpus) and args.out:
        table = compute_indicator_table(data, args.q, args.t)
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "indicators.csv").write_text(write_journal_indicator_table(table))
    _emit(reports, args.format, args.out)
    return 0


def _emit(reports: list[Report], fmt: str, out: str | None) -> None:
    if out:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        for r in reports:
            text = r.to_csv() if fmt == "csv" else r.to_json()
            (d / f"{r.name}.{fmt}").write_text(text)
        return
    if fmt == "json":
        docs = [json.loads(r.to_json()) for r in reports]
        sys.stdout.write(json.dumps(docs, indent=2) + "\n")
        return
    for r in reports:
        sys.stdout.write(f"# {r.name}\n{r.to_csv()}\n")
