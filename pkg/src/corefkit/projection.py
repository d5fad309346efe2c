"""Alignment-driven transfer of mention annotations across languages.

Given a source document, per-sentence word alignments, and the target
sentences, each source mention is classified:

* aligned -- every word of the mention is aligned and the union of its
  target words is one contiguous run; the mention is carried over.
* misaligned -- the target words are discontinuous, or some mention word
  has no alignment; the mention is dropped.
* non-aligned -- no word of the mention is aligned; the mention is
  dropped.

The module also hosts the translation sanity check (repeated-punctuation
detector) and the subword-to-word mapping used to lift subword-level
tool output back to word-level annotations.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .alignments import AlignmentMap
from .core import CorefDataError, Document, Entity, PluralLink, Span

# Devanagari danda family, kept explicit on top of the Unicode P* check.
_EXTRA_PUNCT = {"।", "॥"}


def _is_punct(ch: str) -> bool:
    return ch in _EXTRA_PUNCT or unicodedata.category(ch).startswith("P")


@dataclass(frozen=True)
class SanityConfig:
    """Thresholds for the repeated-punctuation translation check."""

    repeat_fraction: float = 0.9
    min_run: int = 5


@dataclass(frozen=True)
class SanityVerdict:
    passed: bool
    reason: str | None = None


def check_translation_sanity(
    text: str | Sequence[str], config: SanityConfig = SanityConfig()
) -> SanityVerdict:
    """Fail a translation that is (mostly) repeated punctuation.

    The decision depends only on the character sequence with whitespace
    removed: fail if it is empty, if every character is punctuation, or
    if one punctuation character's consecutive run covers at least
    ``repeat_fraction`` of it with run length at least ``min_run``.
    """
    if not isinstance(text, str):
        text = " ".join(text)
    chars = [ch for ch in text if not ch.isspace()]
    if not chars:
        return SanityVerdict(False, "empty")
    if all(_is_punct(ch) for ch in chars):
        return SanityVerdict(False, "all punctuation")

    best_ch, best_run = "", 0
    run_ch, run = None, 0
    for ch in chars:
        run = run + 1 if ch == run_ch else 1
        run_ch = ch
        if run > best_run and _is_punct(ch):
            best_ch, best_run = ch, run
    # Decimal-exact threshold: a run of 18/20 must trip the default 0.9.
    threshold = Fraction(str(config.repeat_fraction))
    if best_run >= config.min_run and Fraction(best_run, len(chars)) >= threshold:
        return SanityVerdict(
            False,
            f"run of {best_ch!r} covers {best_run}/{len(chars)} "
            f"non-whitespace characters",
        )
    return SanityVerdict(True)


@dataclass(frozen=True)
class Aligned:
    span: Span


@dataclass(frozen=True)
class Misaligned:
    target_indices: frozenset[int]


@dataclass(frozen=True)
class NonAligned:
    pass


ProjectionOutcome = Aligned | Misaligned | NonAligned


def project_mention(
    mention: Span, alignment: AlignmentMap, target_len: int
) -> ProjectionOutcome:
    """Classify one mention against a sentence-pair alignment.

    The target index set is the union of targets aligned to any mention
    word; the outcome is decided by the three-way rule in the module
    docstring.
    """
    targets: set[int] = set()
    covered: set[int] = set()
    for i, j in alignment:
        if j >= target_len or j < 0:
            raise CorefDataError(
                f"alignment target index {j} out of bounds for sentence "
                f"length {target_len}"
            )
        if mention.start <= i < mention.end:
            covered.add(i)
            targets.add(j)
    if not targets:
        return NonAligned()
    lo, hi = min(targets), max(targets)
    full_coverage = len(covered) == mention.end - mention.start
    contiguous = hi - lo + 1 == len(targets)
    if full_coverage and contiguous:
        return Aligned(Span(mention.sentence, lo, hi + 1))
    return Misaligned(frozenset(targets))


@dataclass(frozen=True)
class ProjectionSummary:
    """Outcome counts; forms a commutative monoid under ``+``."""

    aligned: int = 0
    misaligned: int = 0
    non_aligned: int = 0

    def __add__(self, other: "ProjectionSummary") -> "ProjectionSummary":
        return ProjectionSummary(
            self.aligned + other.aligned,
            self.misaligned + other.misaligned,
            self.non_aligned + other.non_aligned,
        )

    @property
    def total(self) -> int:
        return self.aligned + self.misaligned + self.non_aligned

    def rates(self) -> tuple[Fraction, Fraction, Fraction]:
        if self.total == 0:
            return Fraction(0), Fraction(0), Fraction(0)
        return (
            Fraction(self.aligned, self.total),
            Fraction(self.misaligned, self.total),
            Fraction(self.non_aligned, self.total),
        )


def project_document(
    source: Document,
    alignments: Sequence[AlignmentMap],
    target_sentences: Sequence[Sequence[str]],
    *,
    target_language: str | None = None,
) -> tuple[Document, ProjectionSummary]:
    """Project a document's annotation onto its target sentences.

    Only aligned mentions survive; entities left empty are dropped, and
    plural links are kept only if their anaphor survived and at least two
    antecedent entities did.  The summary counts every source mention
    membership exactly once.
    """
    if len(alignments) != len(source.sentences) or len(target_sentences) != len(
        source.sentences
    ):
        raise CorefDataError(
            f"document {source.doc_key!r}: expected {len(source.sentences)} "
            f"alignment maps and target sentences, got {len(alignments)} "
            f"and {len(target_sentences)}"
        )

    def project(span: Span) -> ProjectionOutcome:
        return project_mention(
            span, alignments[span.sentence], len(target_sentences[span.sentence])
        )

    counts = {"aligned": 0, "misaligned": 0, "non_aligned": 0}
    entities = []
    for entity in source.entities:
        surviving = []
        for span in entity.mentions:
            outcome = project(span)
            if isinstance(outcome, Aligned):
                counts["aligned"] += 1
                surviving.append(outcome.span)
            elif isinstance(outcome, Misaligned):
                counts["misaligned"] += 1
            else:
                counts["non_aligned"] += 1
        if surviving:
            entities.append(Entity(entity.id, tuple(surviving)))

    kept_ids = {e.id for e in entities}
    links = []
    for link in source.plural_links:
        outcome = project(link.anaphor)
        antecedents = tuple(eid for eid in link.antecedents if eid in kept_ids)
        if isinstance(outcome, Aligned) and len(antecedents) >= 2:
            links.append(PluralLink(outcome.span, antecedents))

    target = Document(
        doc_key=source.doc_key,
        language=source.language if target_language is None else target_language,
        sentences=tuple(tuple(s) for s in target_sentences),
        entities=tuple(entities),
        plural_links=tuple(links),
    )
    return target, ProjectionSummary(**counts)


@dataclass(frozen=True)
class RateRow:
    group: str
    summary: ProjectionSummary


def aggregate_projection_stats(
    items: Iterable[tuple[str, ProjectionSummary]]
) -> list[RateRow]:
    """Merge summaries per group and append a total row.

    Aggregation is order-independent; groups are sorted, the total goes
    last.  An empty input yields an empty table.
    """
    groups: dict[str, ProjectionSummary] = {}
    total = ProjectionSummary()
    for group, summary in items:
        groups[group] = groups.get(group, ProjectionSummary()) + summary
        total = total + summary
    if not groups:
        return []
    rows = [RateRow(group, groups[group]) for group in sorted(groups)]
    rows.append(RateRow("total", total))
    return rows


def subword_to_word_map(
    words: Sequence[str], subwords: Sequence[str], alignment: AlignmentMap
) -> dict[int, int | None]:
    """Map each subword index to its aligned word index.

    ``alignment`` pairs are (word_index, subword_index).  A subword
    aligned to several words maps to the lowest word index; an unaligned
    subword maps to ``None``.
    """
    for w, s in alignment:
        if w < 0 or s < 0 or w >= len(words) or s >= len(subwords):
            raise CorefDataError(
                f"alignment pair ({w},{s}) out of bounds for {len(words)} "
                f"words and {len(subwords)} subwords"
            )
    mapping: dict[int, int | None] = {i: None for i in range(len(subwords))}
    for w, s in sorted(alignment):
        if mapping[s] is None or w < mapping[s]:  # type: ignore[operator]
            mapping[s] = w
    return mapping
