"""Domain types for coreference documents and their structural transforms.

A document is a list of tokenized sentences plus entities (clusters of
word-index spans) and plural links (anaphors such as "Both"/"They" whose
referent is the union of two or more entities).  All types are immutable
values; the transforms below are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


class CorefDataError(ValueError):
    """Malformed or inconsistent coreference data."""


@dataclass(frozen=True, order=True)
class Span:
    """Half-open word-index span [start, end) inside one sentence."""

    sentence: int
    start: int
    end: int

    def __str__(self) -> str:
        return f"({self.sentence},{self.start},{self.end})"


@dataclass(frozen=True)
class Entity:
    """A coreference cluster: an id plus its mention spans.

    Mentions are stored sorted and de-duplicated so that structurally
    equal entities compare and hash equal.
    """

    id: int
    mentions: tuple[Span, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mentions", tuple(sorted(set(self.mentions))))

    def __len__(self) -> int:
        return len(self.mentions)

    @property
    def spans(self) -> frozenset[Span]:
        return frozenset(self.mentions)


@dataclass(frozen=True)
class PluralLink:
    """A plural anaphor pointing at two or more antecedent entities."""

    anaphor: Span
    antecedents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedents", tuple(sorted(set(self.antecedents))))


@dataclass(frozen=True)
class Document:
    """Tokenized sentences plus coreference annotation.

    ``expanded`` marks documents whose plural links have been folded into
    the entities (entities may then overlap, i.e. share spans).
    Entities and plural links are stored in a canonical sort order so that
    two structurally equal documents compare equal.
    """

    doc_key: str
    language: str
    sentences: tuple[tuple[str, ...], ...]
    entities: tuple[Entity, ...] = ()
    plural_links: tuple[PluralLink, ...] = ()
    expanded: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "sentences", tuple(tuple(s) for s in self.sentences)
        )
        object.__setattr__(
            self, "entities", tuple(sorted(self.entities, key=lambda e: e.id))
        )
        object.__setattr__(
            self,
            "plural_links",
            tuple(sorted(self.plural_links, key=lambda l: (l.anaphor, l.antecedents))),
        )

    def mention_spans(self) -> frozenset[Span]:
        """Unique spans across all entities."""
        return frozenset(m for e in self.entities for m in e.mentions)


def _check_span(doc: Document, span: Span, where: str, out: list[str]) -> None:
    if min(span.sentence, span.start, span.end) < 0:
        out.append(f"{where}: span {span} has negative indices")
        return
    if span.sentence >= len(doc.sentences):
        out.append(
            f"{where}: span {span} sentence index out of range "
            f"(document has {len(doc.sentences)} sentences)"
        )
        return
    if span.start >= span.end:
        out.append(f"{where}: span {span} is empty or inverted")
        return
    length = len(doc.sentences[span.sentence])
    if span.end > length:
        out.append(
            f"{where}: span {span} end exceeds sentence {span.sentence} "
            f"length {length}"
        )


def validate_document(doc: Document) -> list[str]:
    """Return every invariant violation; an empty list means the document is valid.

    Violations are data, not failures: each one carries the offending
    span/entity coordinates.
    """
    out: list[str] = []
    seen_ids: set[int] = set()
    for entity in doc.entities:
        if entity.id in seen_ids:
            out.append(f"duplicate entity id {entity.id}")
        seen_ids.add(entity.id)
        if not entity.mentions:
            out.append(f"entity {entity.id}: empty mention set")
        for span in entity.mentions:
            _check_span(doc, span, f"entity {entity.id}", out)

    if not doc.expanded:
        owner: dict[Span, int] = {}
        for entity in doc.entities:
            for span in entity.mentions:
                if span in owner and owner[span] != entity.id:
                    out.append(
                        f"span {span} appears in entities {owner[span]} "
                        f"and {entity.id}"
                    )
                else:
                    owner.setdefault(span, entity.id)

    all_spans = doc.mention_spans()
    for link in doc.plural_links:
        where = f"plural link anaphor {link.anaphor}"
        _check_span(doc, link.anaphor, where, out)
        if link.anaphor not in all_spans:
            out.append(f"{where}: anaphor is not a mention of any entity")
        if len(link.antecedents) < 2:
            out.append(f"{where}: fewer than 2 antecedent entities")
        for eid in link.antecedents:
            if eid not in seen_ids:
                out.append(f"{where}: references missing entity {eid}")
    return out


def expand_split_antecedents(doc: Document) -> Document:
    """Fold plural links into the entity structure.

    For each plural link, every mention of the entity containing the
    anaphor is added to each antecedent entity, and the anaphor's entity
    is dissolved.  The result is flagged ``expanded`` (entities may then
    share spans) and carries no plural links: they have been consumed.
    Documents without plural links are returned unchanged.
    """
    if doc.expanded:
        raise CorefDataError(f"document {doc.doc_key!r} is already expanded")
    if not doc.plural_links:
        return doc

    by_id = {e.id: set(e.mentions) for e in doc.entities}
    containing = {m: e.id for e in doc.entities for m in e.mentions}
    additions: dict[int, set[Span]] = {eid: set() for eid in by_id}
    dissolved: set[int] = set()
    for link in doc.plural_links:
        if link.anaphor not in containing:
            raise CorefDataError(
                f"document {doc.doc_key!r}: plural anaphor {link.anaphor} "
                f"is not a mention of any entity"
            )
        plural_id = containing[link.anaphor]
        for eid in link.antecedents:
            if eid not in by_id:
                raise CorefDataError(
                    f"document {doc.doc_key!r}: plural link references "
                    f"missing entity {eid}"
                )
            additions[eid] |= by_id[plural_id]
        dissolved.add(plural_id)

    entities = tuple(
        Entity(eid, tuple(by_id[eid] | additions[eid]))
        for eid in by_id
        if eid not in dissolved
    )
    return replace(doc, entities=entities, plural_links=(), expanded=True)


def strip_singletons(doc: Document) -> Document:
    """Drop entities with exactly one mention.

    Plural links lose references to removed entities; links left with
    fewer than two antecedents, or whose anaphor no longer belongs to any
    entity, are removed as well.
    """
    kept = tuple(e for e in doc.entities if len(e.mentions) > 1)
    kept_ids = {e.id for e in kept}
    kept_spans = {m for e in kept for m in e.mentions}
    links = []
    for link in doc.plural_links:
        antecedents = tuple(eid for eid in link.antecedents if eid in kept_ids)
        if len(antecedents) >= 2 and link.anaphor in kept_spans:
            links.append(PluralLink(link.anaphor, antecedents))
    return replace(doc, entities=kept, plural_links=tuple(links))
