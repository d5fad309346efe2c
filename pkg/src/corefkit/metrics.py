"""Coreference evaluation: mention detection, MUC, B³, CEAF_e, LEA.

All arithmetic is exact (``fractions.Fraction``); decimal rendering
happens only at output time.  Every metric is computed from pooled
numerator/denominator counts so that corpus scores micro-aggregate:
per-document counts are summed before dividing, and the merge is
commutative and associative (safe under any parallel schedule).

Mention identity is span equality.  Entities are treated as span sets
throughout, which keeps the formulas well defined when entities overlap
(documents in split-antecedent expanded form); values may then exceed 1
and are flagged in the report rather than clamped.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import (
    CorefDataError,
    Document,
    Span,
    expand_split_antecedents,
    strip_singletons,
)
from .rendering import render_score

METRIC_NAMES = ("mentions", "muc", "b_cubed", "ceaf_e", "lea")


class MetricWarning(UserWarning):
    """Degenerate input, e.g. a 0/0 precision reported as 0."""


@dataclass(frozen=True)
class Counts:
    """Pooled precision/recall numerators and denominators."""

    p_num: Fraction = Fraction(0)
    p_den: Fraction = Fraction(0)
    r_num: Fraction = Fraction(0)
    r_den: Fraction = Fraction(0)

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(
            self.p_num + other.p_num,
            self.p_den + other.p_den,
            self.r_num + other.r_num,
            self.r_den + other.r_den,
        )


def f1_score(precision: Fraction, recall: Fraction) -> Fraction:
    if precision + recall == 0:
        return Fraction(0)
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class PRF:
    precision: Fraction
    recall: Fraction
    f1: Fraction


def _prf(counts: Counts, metric: str) -> PRF:
    values = []
    for num, den, side in (
        (counts.p_num, counts.p_den, "precision"),
        (counts.r_num, counts.r_den, "recall"),
    ):
        if den == 0:
            warnings.warn(
                f"{metric} {side} is 0/0; reported as 0", MetricWarning, stacklevel=3
            )
            values.append(Fraction(0))
        else:
            values.append(num / den)
    precision, recall = values
    return PRF(precision, recall, f1_score(precision, recall))


def _entity_sets(doc: Document) -> list[frozenset[Span]]:
    return [e.spans for e in doc.entities]


def _require_same_key(key: Document, response: Document) -> None:
    if key.doc_key != response.doc_key:
        raise CorefDataError(
            f"doc_key mismatch: key {key.doc_key!r} vs response "
            f"{response.doc_key!r}"
        )


# --- per-document count kernels -----------------------------------------


def mention_detection_counts(
    key: Sequence[frozenset[Span]], response: Sequence[frozenset[Span]]
) -> Counts:
    key_spans = frozenset().union(*key) if key else frozenset()
    response_spans = frozenset().union(*response) if response else frozenset()
    matched = len(key_spans & response_spans)
    return Counts(
        Fraction(matched),
        Fraction(len(response_spans)),
        Fraction(matched),
        Fraction(len(key_spans)),
    )


def _muc_direction(
    sides: Sequence[frozenset[Span]], others: Sequence[frozenset[Span]]
) -> tuple[Fraction, Fraction]:
    covered = frozenset().union(*others) if others else frozenset()
    num = den = 0
    for cluster in sides:
        blocks = sum(1 for other in others if cluster & other)
        blocks += len(cluster - covered)
        num += len(cluster) - blocks
        den += len(cluster) - 1
    return Fraction(num), Fraction(den)


def muc_counts(
    key: Sequence[frozenset[Span]], response: Sequence[frozenset[Span]]
) -> Counts:
    r_num, r_den = _muc_direction(key, response)
    p_num, p_den = _muc_direction(response, key)
    return Counts(p_num, p_den, r_num, r_den)


def _b_cubed_direction(
    sides: Sequence[frozenset[Span]], others: Sequence[frozenset[Span]]
) -> tuple[Fraction, Fraction]:
    num = Fraction(0)
    for cluster in sides:
        for other in others:
            overlap = len(cluster & other)
            if overlap:
                num += Fraction(overlap * overlap, len(cluster))
    return num, Fraction(sum(len(c) for c in sides))


def b_cubed_counts(
    key: Sequence[frozenset[Span]], response: Sequence[frozenset[Span]]
) -> Counts:
    r_num, r_den = _b_cubed_direction(key, response)
    p_num, p_den = _b_cubed_direction(response, key)
    return Counts(p_num, p_den, r_num, r_den)


def ceaf_e_counts(
    key: Sequence[frozenset[Span]], response: Sequence[frozenset[Span]]
) -> Counts:
    """Entity-matching similarity 2|k∩r| / (|k|+|r|) under an optimal
    one-to-one entity alignment.

    The assignment is solved on a float matrix and the chosen matching is
    re-evaluated exactly; entity similarities are small rationals, so the
    float optimum and the exact optimum coincide at document scale.
    """
    best = Fraction(0)
    if key and response:
        phi = [
            [Fraction(2 * len(k & r), len(k) + len(r)) for r in response] for k in key
        ]
        matrix = np.array([[float(v) for v in row] for row in phi])
        rows, cols = linear_sum_assignment(matrix, maximize=True)
        best = sum((phi[i][j] for i, j in zip(rows, cols)), Fraction(0))
    return Counts(best, Fraction(len(response)), best, Fraction(len(key)))


def _lea_direction(
    sides: Sequence[frozenset[Span]], others: Sequence[frozenset[Span]]
) -> tuple[Fraction, Fraction]:
    num = Fraction(0)
    den = 0
    for cluster in sides:
        size = len(cluster)
        den += size
        if size == 1:
            # Self-link convention: a singleton resolves iff the other
            # side contains it as an exact singleton entity.
            if any(cluster == other for other in others):
                num += 1
        else:
            links = size * (size - 1) // 2
            resolved = 0
            for other in others:
                overlap = len(cluster & other)
                resolved += overlap * (overlap - 1) // 2
            num += Fraction(size * resolved, links)
    return num, Fraction(den)


def lea_counts(
    key: Sequence[frozenset[Span]], response: Sequence[frozenset[Span]]
) -> Counts:
    r_num, r_den = _lea_direction(key, response)
    p_num, p_den = _lea_direction(response, key)
    return Counts(p_num, p_den, r_num, r_den)


_KERNELS: dict[str, Callable[..., Counts]] = {
    "mentions": mention_detection_counts,
    "muc": muc_counts,
    "b_cubed": b_cubed_counts,
    "ceaf_e": ceaf_e_counts,
    "lea": lea_counts,
}


# --- per-document metric operations --------------------------------------


def _document_metric(metric: str, key: Document, response: Document) -> PRF:
    _require_same_key(key, response)
    return _prf(_KERNELS[metric](_entity_sets(key), _entity_sets(response)), metric)


def mention_detection(key: Document, response: Document) -> PRF:
    """Exact-span mention P/R/F1 over unique spans."""
    return _document_metric("mentions", key, response)


def muc(key: Document, response: Document) -> PRF:
    """Link-based metric: preserved spanning links over required links."""
    return _document_metric("muc", key, response)


def b_cubed(key: Document, response: Document) -> PRF:
    """Per-mention overlap metric in its entity-pair formulation."""
    return _document_metric("b_cubed", key, response)


def ceaf_e(key: Document, response: Document) -> PRF:
    """Entity-based metric under an optimal one-to-one entity alignment."""
    return _document_metric("ceaf_e", key, response)


def lea(key: Document, response: Document) -> PRF:
    """Link-based entity-aware metric (size-weighted resolved-link ratio)."""
    return _document_metric("lea", key, response)


def conll_f1(muc_f1: Fraction, b_cubed_f1: Fraction, ceaf_e_f1: Fraction) -> Fraction:
    """Arithmetic mean of the three F1 scores."""
    return (Fraction(muc_f1) + Fraction(b_cubed_f1) + Fraction(ceaf_e_f1)) / 3


# --- corpus scoring -------------------------------------------------------


@dataclass(frozen=True)
class ScoreReport:
    """Micro-aggregated corpus scores plus the modes that produced them."""

    metrics: dict[str, PRF]
    conll_f1: Fraction
    singletons: str
    split: str
    warnings: tuple[str, ...]


def _prepare(doc: Document, singletons: str, split: str) -> Document:
    if singletons == "exclude":
        doc = strip_singletons(doc)
    if split == "expanded" and not doc.expanded:
        doc = expand_split_antecedents(doc)
    return doc


def _pair_counts(
    pair: tuple[Document, Document], singletons: str, split: str
) -> dict[str, Counts]:
    key, response = pair
    key = _prepare(key, singletons, split)
    response = _prepare(response, singletons, split)
    key_sets, response_sets = _entity_sets(key), _entity_sets(response)
    return {name: _KERNELS[name](key_sets, response_sets) for name in METRIC_NAMES}


def score_corpus(
    key_docs: Sequence[Document],
    response_docs: Sequence[Document],
    *,
    singletons: str = "include",
    split: str = "plain",
    jobs: int = 1,
) -> ScoreReport:
    """Score a response corpus against a key corpus.

    Documents are paired by ``doc_key``; every response document must
    have a key counterpart, while key documents without a response are
    scored against an empty response.  Singleton stripping (mode
    ``singletons="exclude"``) is applied before split-antecedent
    expansion (mode ``split="expanded"``), on both sides.  Counts are
    pooled across documents before dividing, so the result is invariant
    under document reordering and parallel partitioning.
    """
    if singletons not in ("include", "exclude"):
        raise CorefDataError(f"unknown singletons mode {singletons!r}")
    if split not in ("plain", "expanded"):
        raise CorefDataError(f"unknown split mode {split!r}")

    key_by: dict[str, Document] = {}
    for doc in key_docs:
        if doc.doc_key in key_by:
            raise CorefDataError(f"duplicate key document {doc.doc_key!r}")
        key_by[doc.doc_key] = doc
    response_by: dict[str, Document] = {}
    for doc in response_docs:
        if doc.doc_key in response_by:
            raise CorefDataError(f"duplicate response document {doc.doc_key!r}")
        response_by[doc.doc_key] = doc
    unmatched = sorted(set(response_by) - set(key_by))
    if unmatched:
        raise CorefDataError(
            "response documents missing from key: " + ", ".join(unmatched)
        )

    pairs = []
    for doc_key, key in key_by.items():
        response = response_by.get(
            doc_key, replace(key, entities=(), plural_links=(), expanded=False)
        )
        pairs.append((key, response))

    totals = {name: Counts() for name in METRIC_NAMES}
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_doc = list(
                pool.map(
                    _pair_counts,
                    pairs,
                    [singletons] * len(pairs),
                    [split] * len(pairs),
                    chunksize=max(1, len(pairs) // (4 * jobs)),
                )
            )
    else:
        per_doc = [_pair_counts(pair, singletons, split) for pair in pairs]
    for counts in per_doc:
        for name in METRIC_NAMES:
            totals[name] = totals[name] + counts[name]

    report_warnings: list[str] = []
    metrics: dict[str, PRF] = {}
    for name in METRIC_NAMES:
        counts = totals[name]
        values = {}
        for side, num, den in (
            ("precision", counts.p_num, counts.p_den),
            ("recall", counts.r_num, counts.r_den),
        ):
            if den == 0:
                report_warnings.append(f"{name} {side} is 0/0; reported as 0")
                values[side] = Fraction(0)
            else:
                values[side] = num / den
        prf = PRF(
            values["precision"],
            values["recall"],
            f1_score(values["precision"], values["recall"]),
        )
        metrics[name] = prf
        for side in ("precision", "recall", "f1"):
            value = getattr(prf, side)
            if value > 1:
                report_warnings.append(
                    f"{name} {side} = {value} ({render_score(value)}) exceeds 1"
                )

    mean = conll_f1(metrics["muc"].f1, metrics["b_cubed"].f1, metrics["ceaf_e"].f1)
    return ScoreReport(
        metrics=metrics,
        conll_f1=mean,
        singletons=singletons,
        split=split,
        warnings=tuple(report_warnings),
    )
