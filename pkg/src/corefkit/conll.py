"""CoNLL-2012-style coreference column format.

Documents are delimited by ``#begin document <key>`` / ``#end document``
lines, sentences by blank lines.  Rows carry at least three
whitespace-separated columns: word index, token, and the coreference
column last; columns in between are tolerated and ignored.  The
coreference column is ``-`` or ``|``-separated atoms ``(N``, ``N)``,
``(N)`` with ``N`` a non-negative integer entity id.
"""

from __future__ import annotations

import re
import warnings
from typing import Sequence

from .core import CorefDataError, Document, Entity, Span, validate_document

_ATOM = re.compile(r"\((\d+)\)$|\((\d+)$|(\d+)\)$")
_BEGIN = "#begin document"
_END = "#end document"


class ConllParseError(CorefDataError):
    """Input violates the CoNLL coreference grammar."""


class ConllWriteWarning(UserWarning):
    """Lossy serialization, e.g. plural links dropped."""


def parse_conll(data: str | bytes, *, language: str = "") -> list[Document]:
    """Parse CoNLL text into documents.

    The format carries no language field, so ``language`` is applied to
    every returned document.  Returned documents satisfy
    ``validate_document``.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")

    docs: list[Document] = []
    doc_key: str | None = None
    sentences: list[list[str]] = []
    tokens: list[str] = []
    mentions: dict[int, set[Span]] = {}
    open_spans: dict[int, tuple[int, int, int]] = {}  # id -> (sentence, start, line)

    def fail(line_no: int, msg: str) -> ConllParseError:
        return ConllParseError(f"line {line_no}: {msg}")

    def end_sentence() -> None:
        nonlocal tokens
        if tokens:
            sentences.append(tokens)
            tokens = []

    for line_no, raw in enumerate(data.splitlines(), start=1):
        line = raw.rstrip()
        if doc_key is None:
            if not line.strip():
                continue
            if line.startswith(_BEGIN):
                doc_key = line[len(_BEGIN) :].strip()
                sentences, tokens = [], []
                mentions, open_spans = {}, {}
                continue
            raise fail(line_no, f"unexpected content outside a document: {line!r}")

        if line == _END:
            end_sentence()
            if open_spans:
                eid, (_, _, opened_at) = min(
                    open_spans.items(), key=lambda kv: (kv[1][2], kv[0])
                )
                raise fail(
                    opened_at, f"entity {eid} mention opened here was never closed"
                )
            doc = Document(
                doc_key=doc_key,
                language=language,
                sentences=tuple(tuple(s) for s in sentences),
                entities=tuple(
                    Entity(eid, tuple(spans)) for eid, spans in mentions.items()
                ),
            )
            violations = validate_document(doc)
            if violations:
                raise ConllParseError(
                    f"document {doc_key!r}: " + "; ".join(violations)
                )
            docs.append(doc)
            doc_key = None
            continue

        if not line.strip():
            end_sentence()
            continue
        if line.startswith("#"):
            raise fail(line_no, f"unexpected comment line inside a document: {line!r}")

        parts = line.split()
        if len(parts) < 3:
            raise fail(line_no, f"expected at least 3 columns, got {len(parts)}")
        token, coref = parts[1], parts[-1]
        sent_idx, tok_idx = len(sentences), len(tokens)
        tokens.append(token)

        if coref == "-":
            continue
        for atom in coref.split("|"):
            match = _ATOM.fullmatch(atom)
            if match is None:
                raise fail(line_no, f"invalid coreference atom {atom!r}")
            single, opened, closed = match.groups()
            if single is not None:
                eid = int(single)
                mentions.setdefault(eid, set()).add(
                    Span(sent_idx, tok_idx, tok_idx + 1)
                )
            elif opened is not None:
                eid = int(opened)
                if eid in open_spans:
                    raise fail(
                        line_no,
                        f"entity {eid} opened again before closing "
                        f"(opened at line {open_spans[eid][2]})",
                    )
                open_spans[eid] = (sent_idx, tok_idx, line_no)
            else:
                eid = int(closed)
                if eid not in open_spans:
                    raise fail(
                        line_no, f"close marker for entity {eid} with no matching open"
                    )
                open_sent, open_tok, opened_at = open_spans.pop(eid)
                if open_sent != sent_idx:
                    raise fail(
                        line_no,
                        f"entity {eid} mention crosses a sentence boundary "
                        f"(opened at line {opened_at})",
                    )
                mentions.setdefault(eid, set()).add(
                    Span(sent_idx, open_tok, tok_idx + 1)
                )

    if doc_key is not None:
        raise ConllParseError(f"end of input inside document {doc_key!r}")
    return docs


def _column_atoms(entities: Sequence[Entity], sent: int, tok: int) -> str:
    opens, singles, closes = [], [], []
    for entity in entities:
        for span in entity.mentions:
            if span.sentence != sent:
                continue
            if span.start == tok and span.end == tok + 1:
                singles.append((entity.id, f"({entity.id})"))
            else:
                if span.start == tok:
                    opens.append((-span.end, entity.id, f"({entity.id}"))
                if span.end == tok + 1:
                    closes.append((-span.start, entity.id, f"{entity.id})"))
    atoms = (
        [a for *_, a in sorted(opens)]
        + [a for _, a in sorted(singles)]
        + [a for *_, a in sorted(closes)]
    )
    return "|".join(atoms) if atoms else "-"


def write_conll(docs: Sequence[Document]) -> str:
    """Serialize documents to CoNLL text.

    Expanded documents (overlapping entities) are rejected; plural links
    cannot be represented and are dropped with a :class:`ConllWriteWarning`
    listing them.  ``parse_conll(write_conll(docs))`` reproduces the
    documents (modulo the language field, which the format cannot carry),
    and serializing the reparse is byte-identical.
    """
    out: list[str] = []
    for doc in docs:
        if doc.expanded:
            raise CorefDataError(
                f"document {doc.doc_key!r} is expanded; overlapping entities "
                f"are not representable in CoNLL"
            )
        violations = validate_document(doc)
        if violations:
            raise CorefDataError(
                f"document {doc.doc_key!r} is not valid: " + "; ".join(violations)
            )
        for entity in doc.entities:
            multi = sorted(s for s in entity.mentions if s.end - s.start > 1)
            for a, b in zip(multi, multi[1:]):
                if a.sentence == b.sentence and b.start < a.end:
                    raise CorefDataError(
                        f"document {doc.doc_key!r}: entity {entity.id} has "
                        f"overlapping multi-token spans {a} and {b}; not "
                        f"representable in CoNLL"
                    )
        if doc.plural_links:
            dropped = ", ".join(
                f"{link.anaphor}->{list(link.antecedents)}"
                for link in doc.plural_links
            )
            warnings.warn(
                f"document {doc.doc_key!r}: {len(doc.plural_links)} plural "
                f"link(s) dropped (not representable in CoNLL): {dropped}",
                ConllWriteWarning,
                stacklevel=2,
            )

        out.append(f"{_BEGIN} {doc.doc_key}")
        for sent_idx, sentence in enumerate(doc.sentences):
            for tok_idx, token in enumerate(sentence):
                col = _column_atoms(doc.entities, sent_idx, tok_idx)
                out.append(f"{tok_idx} {token} {col}")
            out.append("")
        out.append(_END)
    return "\n".join(out) + "\n" if out else ""
