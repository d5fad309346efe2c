"""Corpus statistics: sentence/mention/cluster/singleton/plural-link counts.

Counting is a pure fold over documents with a commutative-monoid merge,
so grouped and parallel computations agree with the serial one.  Both
cluster counts are reported: clusters of two or more mentions and the
total including singletons.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import CorefDataError, Document


@dataclass(frozen=True)
class CorpusStats:
    n_sents: int = 0
    n_mentions: int = 0
    n_clusters_multi: int = 0
    n_singletons: int = 0
    n_split_antecedents: int = 0
    n_docs: int = 0

    @property
    def n_clusters_total(self) -> int:
        return self.n_clusters_multi + self.n_singletons

    def __add__(self, other: "CorpusStats") -> "CorpusStats":
        return CorpusStats(
            self.n_sents + other.n_sents,
            self.n_mentions + other.n_mentions,
            self.n_clusters_multi + other.n_clusters_multi,
            self.n_singletons + other.n_singletons,
            self.n_split_antecedents + other.n_split_antecedents,
            self.n_docs + other.n_docs,
        )


def document_stats(doc: Document) -> CorpusStats:
    """Counts for one document; mentions are unique spans."""
    return CorpusStats(
        n_sents=len(doc.sentences),
        n_mentions=len(doc.mention_spans()),
        n_clusters_multi=sum(1 for e in doc.entities if len(e.mentions) > 1),
        n_singletons=sum(1 for e in doc.entities if len(e.mentions) == 1),
        n_split_antecedents=len(doc.plural_links),
        n_docs=1,
    )


@dataclass(frozen=True)
class StatsTable:
    """Per-group rows (sorted by group) plus the corpus total."""

    rows: tuple[tuple[str, CorpusStats], ...]
    total: CorpusStats


def _grouped_stats(args: tuple[Document, str | None]) -> tuple[str, CorpusStats]:
    doc, group_by = args
    group = getattr(doc, group_by) if group_by else ""
    return group, document_stats(doc)


def corpus_stats(
    docs: Sequence[Document], group_by: str | None = None, *, jobs: int = 1
) -> StatsTable:
    """Aggregate statistics, optionally grouped by a document attribute
    (e.g. ``"language"``)."""
    if jobs > 1 and len(docs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_doc = list(
                pool.map(
                    _grouped_stats,
                    [(doc, group_by) for doc in docs],
                    chunksize=max(1, len(docs) // (4 * jobs)),
                )
            )
    else:
        per_doc = [_grouped_stats((doc, group_by)) for doc in docs]

    groups: dict[str, CorpusStats] = {}
    total = CorpusStats()
    for group, stats in per_doc:
        groups[group] = groups.get(group, CorpusStats()) + stats
        total = total + stats
    rows = tuple((group, groups[group]) for group in sorted(groups)) if group_by else ()
    return StatsTable(rows=rows, total=total)


def split_antecedent_ratio(stats: CorpusStats) -> Fraction:
    """Plural anaphors per hundred mentions, as an exact percentage."""
    if stats.n_mentions == 0:
        raise CorefDataError("split-antecedent ratio undefined for zero mentions")
    return Fraction(100) * Fraction(stats.n_split_antecedents, stats.n_mentions)
