"""Percentage-of-highly-cited-articles journal indicators and their validation statistics."""

from .corpus import (
    ArticleCorpus,
    ArticleRecord,
    JournalIndicatorRow,
    JournalIndicatorTable,
    SyntheticConfig,
    generate_synthetic_corpus,
    parse_article_corpus,
    parse_journal_indicator_table,
    validate_corpus,
)
from .indicators import (
    ThresholdTable,
    build_threshold_table,
    citation_threshold,
    compute_indicator_table,
    h_index,
    highly_cited_count,
    mean_citation_rate,
    part_indicator,
    windowed_h_index,
)
from .stats import (
    competition_rank,
    descriptive_stats,
    distribution_summary,
    f_upper_tail,
    one_way_anova,
    spearman,
)

__version__ = "0.1.0"
