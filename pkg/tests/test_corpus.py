import io

import pytest

from hicite.corpus import (
    JOURNAL_HEADER,
    ArticleCorpus,
    ArticleRecord,
    SyntheticConfig,
    generate_synthetic_corpus,
    parse_article_corpus,
    parse_journal_indicator_table,
    validate_corpus,
    write_article_corpus,
    write_journal_indicator_table,
)
from hicite.errors import ConfigError, RowError, SchemaError, ValidationError

HEADER = "journal_id,category_id,pub_year,citations\n"


def test_parse_three_rows():
    src = (HEADER + "J1,C1,2012,5\nJ2,C1,2012,0\nJ1,C2,2013,7\n").encode()
    corpus = parse_article_corpus(src, 2013)
    assert len(corpus) == 3
    assert sorted(corpus.by_cell[("C1", 2012)]) == [0, 5]
    assert corpus.by_cell[("C2", 2013)] == (7,)
    by_cell = sorted(c for cell in corpus.by_cell.values() for c in cell)
    by_journal = sorted(r.citations for grp in corpus.by_journal_year.values() for r in grp)
    assert by_cell == by_journal == [0, 5, 7]


def test_parse_accepts_binary_stream():
    corpus = parse_article_corpus(io.BytesIO((HEADER + "J1,C1,2010,1\n").encode()), 2013)
    assert corpus.records == (ArticleRecord("J1", "C1", 2010, 1),)


def test_header_only_is_empty_corpus():
    corpus = parse_article_corpus(HEADER.encode(), 2013)
    assert len(corpus) == 0
    assert corpus.by_cell == {}


def test_future_year_is_rejected_with_line_number():
    with pytest.raises(ValidationError) as err:
        parse_article_corpus((HEADER + "J1,C1,2014,5\n").encode(), 2013)
    assert err.value.line == 2
    assert "line 2" in str(err.value)


def test_bad_header_names_expected_header():
    with pytest.raises(SchemaError, match="journal_id,category_id,pub_year,citations"):
        parse_article_corpus(b"journal,category,year,cites\nJ1,C1,2013,1\n", 2013)


@pytest.mark.parametrize("row", ["J1,C1,2012,five", "J1,C1,twenty,5", "J1,C1,2012,2.5"])
def test_non_integer_fields_are_row_errors(row):
    with pytest.raises(RowError) as err:
        parse_article_corpus((HEADER + "J1,C1,2012,1\n" + row + "\n").encode(), 2013)
    assert err.value.line == 3


def test_negative_citations_rejected():
    with pytest.raises(ValidationError):
        parse_article_corpus((HEADER + "J1,C1,2012,-1\n").encode(), 2013)


def test_corpus_construction_checks_census():
    with pytest.raises(ValidationError):
        ArticleCorpus(2012, (ArticleRecord("J", "C", 2013, 0),))


def test_round_trip():
    corpus = generate_synthetic_corpus(SyntheticConfig(seed=11))
    assert parse_article_corpus(write_article_corpus(corpus).encode(), corpus.census_year) == corpus


# --- journal tables -----------------------------------------------------------------


def _journal_csv(*rows):
    return (",".join(JOURNAL_HEADER) + "\n" + "".join(r + "\n" for r in rows)).encode()


def _row(jid="1", jif5="1.000", jif2="0.500", part="0.100"):
    return ",".join([jid, "T", "1", "10", jif5, jif2, "3", "2"] + [part] * 20)


def test_journal_fixture_row_for_informetrics(journal_table):
    row = journal_table["40"]
    assert row.title == "J INFORMETR"
    assert (row.jif5, row.jif2, row.h5, row.h3) == (3.609, 3.580, 27, 17)
    assert row.part[(10, 5)] == 0.391
    assert row.n_articles == 353


def test_journal_fixture_row_for_mis_quarterly(journal_table):
    row = journal_table["65"]
    assert row.title == "MIS QUART"
    assert row.jif5 == 8.157 and row.jif2 == 5.405
    assert row.h5 == 10 and row.h3 == 5


def test_missing_jif_is_not_zero():
    table = parse_journal_indicator_table(_journal_csv(_row("1", jif5=""), _row("2", jif5="0.000")))
    assert table["1"].jif5 is None
    assert table["2"].jif5 == 0.0
    assert table.column("jif5") == [None, 0.0]


def test_journal_table_provenance(journal_table):
    assert journal_table.provenance == "ingested"
    assert len(journal_table) == 167


def test_part_out_of_range():
    with pytest.raises(ValidationError):
        parse_journal_indicator_table(_journal_csv(_row(part="1.200")))


def test_duplicate_id():
    with pytest.raises(ValidationError, match="duplicate"):
        parse_journal_indicator_table(_journal_csv(_row("7"), _row("7")))


def test_journal_header_checked():
    with pytest.raises(SchemaError):
        parse_journal_indicator_table(b"id,title\n1,x\n")


def test_journal_table_round_trip(journal_table):
    text = write_journal_indicator_table(journal_table)
    assert parse_journal_indicator_table(text) == journal_table


def test_variable_order(journal_table):
    v = journal_table.variables
    assert v[:6] == ["jif5", "jif2", "h5", "h3", "pArt_10_5", "pArt_10_4"]
    assert v[-1] == "pArt_40_2" and len(v) == 24


# --- validation ---------------------------------------------------------------------


def test_validate_flags_small_cell():
    recs = [ArticleRecord("J", "C1", 2012, i) for i in range(12)]
    recs += [ArticleRecord("J", "C2", 2012, i) for i in range(3)]
    report = validate_corpus(ArticleCorpus(2013, recs), min_articles=10)
    assert report.small_cells == (("C2", 2012, 3),)


def test_validate_clean_and_empty():
    recs = [ArticleRecord("J", "C1", 2012, i) for i in range(10)]
    assert validate_corpus(ArticleCorpus(2013, recs)).ok
    assert validate_corpus(ArticleCorpus(2013, ())).small_cells == ()


# --- synthetic ----------------------------------------------------------------------


def test_synthetic_deterministic():
    cfg = SyntheticConfig(seed=1)
    a, b = generate_synthetic_corpus(cfg), generate_synthetic_corpus(cfg)
    assert write_article_corpus(a) == write_article_corpus(b)
    assert write_article_corpus(a) != write_article_corpus(generate_synthetic_corpus(SyntheticConfig(seed=2)))


def test_synthetic_uniform_zero():
    cfg = SyntheticConfig(citation_distribution="uniform", citation_params=(0, 0), seed=3)
    assert all(r.citations == 0 for r in generate_synthetic_corpus(cfg).records)


def test_synthetic_counts():
    cfg = SyntheticConfig(
        n_categories=2, journals_per_category=3, articles_per_journal_range=(5, 5),
        pub_year_range=(2013, 2013), seed=4,
    )
    assert len(generate_synthetic_corpus(cfg)) == 30


@pytest.mark.parametrize("dist,params", [("lognormal", (0.0, 1.5)), ("geometric", (0.3,)), ("uniform", (2, 9))])
def test_synthetic_distributions_respect_cap(dist, params):
    cfg = SyntheticConfig(citation_distribution=dist, citation_params=params, max_citations=6, seed=5)
    cites = [r.citations for r in generate_synthetic_corpus(cfg).records]
    assert cites and all(0 <= c <= 6 for c in cites)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(citation_distribution="uniform", citation_params=(5, 1)),
        dict(citation_distribution="geometric", citation_params=(0.0,)),
        dict(citation_distribution="lognormal", citation_params=(0.0, -1.0)),
        dict(citation_distribution="poisson", citation_params=(1.0,)),
        dict(articles_per_journal_range=(0, 3)),
        dict(pub_year_range=(2013, 2009)),
    ],
)
def test_synthetic_bad_config(kwargs):
    with pytest.raises(ConfigError):
        generate_synthetic_corpus(SyntheticConfig(**kwargs))
