"""Mention-ranking decoding over precomputed span and pairwise scores.

The link strength of spans i and j is s_m(i) + s_m(j) + s_a(i, j); the
dummy antecedent ε scores exactly 0.  Each mention greedily selects the
argmax over ε and all earlier mentions (ties at 0 resolve to ε, ties
between antecedents to the closer one), and the selected links are merged
into clusters with union-find.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import CorefDataError, Entity, Span

NEG_INF = float("-inf")


@dataclass(frozen=True)
class PairwiseScores:
    """Per-mention scores ``s_m`` and pairwise scores ``s_a`` over (i, j), j < i.

    Mentions are in discourse order, strictly increasing by
    (sentence, start, end).  Missing ``s_a`` entries default to -inf
    (no link evidence).
    """

    mentions: tuple[Span, ...]
    s_m: tuple[float, ...]
    s_a: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mentions", tuple(self.mentions))
        object.__setattr__(self, "s_m", tuple(float(v) for v in self.s_m))
        object.__setattr__(self, "s_a", dict(self.s_a))
        if len(self.s_m) != len(self.mentions):
            raise CorefDataError(
                f"expected {len(self.mentions)} mention scores, got {len(self.s_m)}"
            )
        for a, b in zip(self.mentions, self.mentions[1:]):
            if not a < b:
                raise CorefDataError(
                    f"mentions must be strictly increasing in discourse "
                    f"order; got {a} before {b}"
                )
        n = len(self.mentions)
        for i, j in self.s_a:
            if not 0 <= j < i < n:
                raise CorefDataError(
                    f"pairwise score ({i},{j}) violates 0 <= j < i < {n}"
                )

    def __len__(self) -> int:
        return len(self.mentions)


def pair_score(scores: PairwiseScores, i: int, j: int | None) -> float:
    """Link strength of mention i with antecedent j, or 0 for j=None (ε)."""
    if j is None:
        return 0.0
    if not 0 <= j < i < len(scores):
        raise CorefDataError(f"antecedent index {j} is not earlier than mention {i}")
    return scores.s_m[i] + scores.s_m[j] + scores.s_a.get((i, j), NEG_INF)


def antecedent_distribution(scores: PairwiseScores, i: int) -> list[float]:
    """Softmax over the candidate set (ε, 0, 1, ..., i-1), in that order.

    Computed with max-subtraction; -inf scores map to probability exactly
    0.  The result sums to 1 within 1e-9.
    """
    if not 0 <= i < len(scores):
        raise CorefDataError(f"mention index {i} out of range")
    raw = [0.0] + [pair_score(scores, i, j) for j in range(i)]
    top = max(raw)
    exps = [math.exp(v - top) if v > NEG_INF else 0.0 for v in raw]
    total = sum(exps)
    return [v / total for v in exps]


def decode(scores: PairwiseScores) -> list[Entity]:
    """Greedy antecedent selection followed by union-find clustering.

    The returned entities partition the mention list; mentions that pick
    ε and are never picked become singletons.  Entity ids run from 0 in
    order of each cluster's first mention.
    """
    n = len(scores)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        best_j, best = None, 0.0
        for j in range(i):
            s = pair_score(scores, i, j)
            if best_j is None or s >= best:
                best_j, best = j, s
        if best_j is not None and best > 0.0:
            parent[find(i)] = find(best_j)

    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    ordered = sorted(clusters.values(), key=lambda ms: ms[0])
    return [
        Entity(eid, tuple(scores.mentions[m] for m in members))
        for eid, members in enumerate(ordered)
    ]


def parse_score_records(data: str | bytes) -> list[tuple[str, PairwiseScores]]:
    """Parse score records, one JSON object per line.

    Record fields: ``doc_key``, ``mentions`` (span triples in discourse
    order), ``s_m`` (one number per mention), ``s_a`` (list of
    ``[i, j, value]`` triples; omitted pairs default to -inf).
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    records: list[tuple[str, PairwiseScores]] = []
    for line_no, line in enumerate(data.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorefDataError(f"line {line_no}: invalid JSON: {exc}") from exc
        try:
            doc_key = record["doc_key"]
            mentions = tuple(Span(*m) for m in record["mentions"])
            s_m = tuple(float(v) for v in record["s_m"])
            s_a = {
                (int(i), int(j)): float(v) for i, j, v in record.get("s_a", [])
            }
            records.append((doc_key, PairwiseScores(mentions, s_m, s_a)))
        except CorefDataError as exc:
            raise CorefDataError(f"line {line_no}: {exc}") from exc
        except (KeyError, TypeError, ValueError) as exc:
            raise CorefDataError(
                f"line {line_no}: malformed score record: {exc}"
            ) from exc
    return records
