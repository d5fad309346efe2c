"""Line-delimited canonical document format (one JSON record per line).

This format is lossless for every :class:`~corefkit.core.Document` field,
including plural links and the expanded flag, which CoNLL cannot carry.

Record fields: ``doc_key``, ``language``, ``sentences`` (list of token
lists), ``entities`` (``{"id": int, "mentions": [[sentence, start, end],
...]}``), ``plural_links`` (``{"anaphor": [sentence, start, end],
"antecedents": [id, ...]}``), ``expanded`` (bool, optional, default
false).
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from .core import CorefDataError, Document, Entity, PluralLink, Span


class CanonicalParseError(CorefDataError):
    """Record violates the canonical document schema."""


def _fail(line_no: int, path: str, msg: str) -> CanonicalParseError:
    return CanonicalParseError(f"line {line_no}: {path}: {msg}")


def _get(record: dict, key: str, typ: type, line_no: int, path: str) -> Any:
    if key not in record:
        raise _fail(line_no, path, f"missing {key!r} field")
    value = record[key]
    if typ is int and isinstance(value, bool) or not isinstance(value, typ):
        raise _fail(line_no, f"{path}.{key}", f"expected {typ.__name__}")
    return value


def _parse_span(value: Any, line_no: int, path: str) -> Span:
    if (
        not isinstance(value, list)
        or len(value) != 3
        or any(isinstance(v, bool) or not isinstance(v, int) for v in value)
    ):
        raise _fail(line_no, path, "expected [sentence, start, end] integers")
    if any(v < 0 for v in value):
        raise _fail(line_no, path, "span indices must be non-negative")
    return Span(*value)


def parse_canonical(data: str | bytes) -> list[Document]:
    """Parse canonical records, one document per non-empty line."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    docs: list[Document] = []
    for line_no, line in enumerate(data.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CanonicalParseError(f"line {line_no}: invalid JSON: {exc}") from exc
        if not isinstance(record, dict):
            raise _fail(line_no, "$", "expected a JSON object")

        doc_key = _get(record, "doc_key", str, line_no, "$")
        language = _get(record, "language", str, line_no, "$")

        sentences_raw = _get(record, "sentences", list, line_no, "$")
        sentences = []
        for i, sent in enumerate(sentences_raw):
            path = f"$.sentences[{i}]"
            if not isinstance(sent, list) or any(
                not isinstance(tok, str) for tok in sent
            ):
                raise _fail(line_no, path, "expected a list of token strings")
            sentences.append(tuple(sent))

        entities = []
        for i, ent in enumerate(_get(record, "entities", list, line_no, "$")):
            path = f"$.entities[{i}]"
            if not isinstance(ent, dict):
                raise _fail(line_no, path, "expected an object")
            eid = _get(ent, "id", int, line_no, path)
            if eid < 0:
                raise _fail(line_no, f"{path}.id", "entity id must be non-negative")
            mentions_raw = _get(ent, "mentions", list, line_no, path)
            mentions = tuple(
                _parse_span(m, line_no, f"{path}.mentions[{j}]")
                for j, m in enumerate(mentions_raw)
            )
            entities.append(Entity(eid, mentions))

        links = []
        for i, link in enumerate(_get(record, "plural_links", list, line_no, "$")):
            path = f"$.plural_links[{i}]"
            if not isinstance(link, dict):
                raise _fail(line_no, path, "expected an object")
            anaphor = _parse_span(
                _get(link, "anaphor", list, line_no, path), line_no, f"{path}.anaphor"
            )
            ants_raw = _get(link, "antecedents", list, line_no, path)
            if any(isinstance(a, bool) or not isinstance(a, int) for a in ants_raw):
                raise _fail(
                    line_no, f"{path}.antecedents", "expected a list of entity ids"
                )
            links.append(PluralLink(anaphor, tuple(ants_raw)))

        expanded = record.get("expanded", False)
        if not isinstance(expanded, bool):
            raise _fail(line_no, "$.expanded", "expected bool")

        docs.append(
            Document(
                doc_key=doc_key,
                language=language,
                sentences=tuple(sentences),
                entities=tuple(entities),
                plural_links=tuple(links),
                expanded=expanded,
            )
        )
    return docs


def write_canonical(docs: Sequence[Document]) -> str:
    """Serialize documents, one compact JSON record per line.

    Output is byte-deterministic: entities, mentions, and links are
    already canonically ordered by the document type.
    """
    lines = []
    for doc in docs:
        record = {
            "doc_key": doc.doc_key,
            "language": doc.language,
            "sentences": [list(s) for s in doc.sentences],
            "entities": [
                {"id": e.id, "mentions": [[m.sentence, m.start, m.end] for m in e.mentions]}
                for e in doc.entities
            ],
            "plural_links": [
                {
                    "anaphor": [link.anaphor.sentence, link.anaphor.start, link.anaphor.end],
                    "antecedents": list(link.antecedents),
                }
                for link in doc.plural_links
            ],
            "expanded": doc.expanded,
        }
        lines.append(json.dumps(record, ensure_ascii=False, separators=(",", ":")))
    return "\n".join(lines) + "\n" if lines else ""
