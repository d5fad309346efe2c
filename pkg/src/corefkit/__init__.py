"""corefkit: coreference scoring, cross-lingual mention projection,
mention-ranking decoding, and corpus statistics."""

from .alignments import AlignmentMap, parse_alignments, write_alignments
from .canonical import parse_canonical, write_canonical
from .conll import ConllParseError, ConllWriteWarning, parse_conll, write_conll
from .core import (
    CorefDataError,
    Document,
    Entity,
    PluralLink,
    Span,
    expand_split_antecedents,
    strip_singletons,
    validate_document,
)
from .decoder import (
    PairwiseScores,
    antecedent_distribution,
    decode,
    pair_score,
    parse_score_records,
)
from .metrics import (
    PRF,
    ScoreReport,
    b_cubed,
    ceaf_e,
    conll_f1,
    lea,
    mention_detection,
    muc,
    score_corpus,
)
from .projection import (
    Aligned,
    Misaligned,
    NonAligned,
    ProjectionOutcome,
    ProjectionSummary,
    SanityConfig,
    SanityVerdict,
    aggregate_projection_stats,
    check_translation_sanity,
    project_document,
    project_mention,
    subword_to_word_map,
)
from .stats import CorpusStats, StatsTable, corpus_stats, document_stats, split_antecedent_ratio

__version__ = "0.1.0"

__all__ = [
    "AlignmentMap",
    "Aligned",
    "ConllParseError",
    "ConllWriteWarning",
    "CorefDataError",
    "CorpusStats",
    "Document",
    "Entity",
    "Misaligned",
    "NonAligned",
    "PRF",
    "PairwiseScores",
    "PluralLink",
    "ProjectionOutcome",
    "ProjectionSummary",
    "SanityConfig",
    "SanityVerdict",
    "ScoreReport",
    "Span",
    "StatsTable",
    "aggregate_projection_stats",
    "antecedent_distribution",
    "b_cubed",
    "ceaf_e",
    "check_translation_sanity",
    "conll_f1",
    "corpus_stats",
    "decode",
    "document_stats",
    "expand_split_antecedents",
    "lea",
    "mention_detection",
    "muc",
    "pair_score",
    "parse_alignments",
    "parse_canonical",
    "parse_conll",
    "parse_score_records",
    "project_document",
    "project_mention",
    "score_corpus",
    "split_antecedent_ratio",
    "strip_singletons",
    "subword_to_word_map",
    "validate_document",
    "write_alignments",
    "write_canonical",
    "write_conll",
]
