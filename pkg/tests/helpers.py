"""Shared fixture builders for the test suite."""

from __future__ import annotations

import random

from corefkit.core import Document, Entity, PluralLink, Span


def make_doc(
    doc_key: str,
    sentences: list[list[str]],
    entities: dict[int, list[tuple[int, int, int]]],
    plural_links: list[tuple[tuple[int, int, int], list[int]]] = (),
    language: str = "eng_Latn",
    expanded: bool = False,
) -> Document:
    return Document(
        doc_key=doc_key,
        language=language,
        sentences=tuple(tuple(s) for s in sentences),
        entities=tuple(
            Entity(eid, tuple(Span(*m) for m in mentions))
            for eid, mentions in entities.items()
        ),
        plural_links=tuple(
            PluralLink(Span(*anaphor), tuple(ants))
            for anaphor, ants in plural_links
        ),
        expanded=expanded,
    )


def pathology_doc() -> Document:
    """Two single-pair entities plus a two-anaphor plural entity.

    Expanding the plural links yields the overlapping clusters
    {a,f,c,d} / {b,e,c,d} on which standard B-cubed recall is 10/8 and
    LEA is 7/6 even for a response identical to the key.
    """
    return make_doc(
        "pathology",
        [
            "Meera founded the lab in Pune while Tara studied in Oslo .".split(),
            "Both became mentors .".split(),
            "They reunited in 2001 .".split(),
            "The director of the lab praised the author of the thesis .".split(),
        ],
        {
            0: [(0, 0, 1), (3, 0, 5)],       # a, f
            1: [(0, 7, 8), (3, 6, 11)],      # b, e
            2: [(1, 0, 1), (2, 0, 1)],       # c, d
        },
        plural_links=[((1, 0, 1), [0, 1]), ((2, 0, 1), [0, 1])],
    )


def random_document(
    rng: random.Random,
    doc_key: str,
    *,
    max_mentions: int = 8,
    max_entities: int = 4,
    require_link: bool = False,
    language: str = "eng_Latn",
) -> Document:
    """A random valid document with non-overlapping entities.

    Entities never share a span (mention identity is span equality);
    ``require_link`` forces at least one entity of size two or more.
    """
    n_sents = rng.randint(1, 3)
    sentences = [
        [f"w{s}_{t}" for t in range(rng.randint(3, 8))] for s in range(n_sents)
    ]
    spans = set()
    for s, sentence in enumerate(sentences):
        for start in range(len(sentence)):
            for end in range(start + 1, min(start + 3, len(sentence)) + 1):
                spans.add(Span(s, start, end))
    n_mentions = rng.randint(2 if require_link else 1, min(max_mentions, len(spans)))
    chosen = rng.sample(sorted(spans), n_mentions)
    n_entities = rng.randint(1, min(max_entities, n_mentions))
    if require_link and n_entities == n_mentions:
        n_entities = n_mentions - 1 if n_mentions > 1 else 1
    buckets: list[list[Span]] = [[] for _ in range(n_entities)]
    for i, span in enumerate(chosen):
        buckets[i % n_entities if i < n_entities else rng.randrange(n_entities)].append(span)
    entities = tuple(
        Entity(eid, tuple(bucket)) for eid, bucket in enumerate(buckets) if bucket
    )
    return Document(
        doc_key=doc_key,
        language=language,
        sentences=tuple(tuple(s) for s in sentences),
        entities=entities,
    )


def random_response(rng: random.Random, key: Document) -> Document:
    """A random re-clustering of (a perturbed subset of) the key's spans."""
    spans = sorted(key.mention_spans())
    kept = [s for s in spans if rng.random() > 0.25]
    extra_pool = sorted(
        {
            Span(s, start, start + 1)
            for s, sentence in enumerate(key.sentences)
            for start in range(len(sentence))
        }
        - set(spans)
    )
    if extra_pool and rng.random() > 0.5:
        kept.extend(rng.sample(extra_pool, rng.randint(1, min(2, len(extra_pool)))))
    kept = sorted(set(kept))
    if not kept:
        return Document(key.doc_key, key.language, key.sentences)
    n_entities = rng.randint(1, len(kept))
    buckets: list[list[Span]] = [[] for _ in range(n_entities)]
    for span in kept:
        buckets[rng.randrange(n_entities)].append(span)
    entities = tuple(
        Entity(eid, tuple(bucket)) for eid, bucket in enumerate(buckets) if bucket
    )
    return Document(key.doc_key, key.language, key.sentences, entities)
