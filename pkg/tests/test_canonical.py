import json

import pytest

from corefkit.canonical import CanonicalParseError, parse_canonical, write_canonical
from corefkit.core import expand_split_antecedents

from helpers import make_doc, pathology_doc


def test_pathology_round_trips_with_plural_links():
    doc = pathology_doc()
    text = write_canonical([doc])
    assert parse_canonical(text) == [doc]
    assert write_canonical(parse_canonical(text)) == text


def test_expanded_document_round_trips_with_overlap():
    doc = expand_split_antecedents(pathology_doc())
    text = write_canonical([doc])
    (again,) = parse_canonical(text)
    assert again == doc
    assert again.expanded


def test_missing_sentences_field_names_it():
    record = {"doc_key": "d", "language": "", "entities": [], "plural_links": []}
    with pytest.raises(CanonicalParseError, match=r"line 1: \$: missing 'sentences'"):
        parse_canonical(json.dumps(record) + "\n")


def test_bad_span_shape_names_field_path():
    record = {
        "doc_key": "d",
        "language": "",
        "sentences": [["a"]],
        "entities": [{"id": 0, "mentions": [[0, 0]]}],
        "plural_links": [],
    }
    with pytest.raises(CanonicalParseError, match=r"entities\[0\].mentions\[0\]"):
        parse_canonical(json.dumps(record) + "\n")


def test_negative_index_rejected():
    record = {
        "doc_key": "d",
        "language": "",
        "sentences": [["a"]],
        "entities": [{"id": 0, "mentions": [[0, -1, 1]]}],
        "plural_links": [],
    }
    with pytest.raises(CanonicalParseError, match="non-negative"):
        parse_canonical(json.dumps(record) + "\n")


def test_invalid_json_reports_line_number():
    good = write_canonical([make_doc("d", [["a"]], {0: [(0, 0, 1)]})]).strip()
    with pytest.raises(CanonicalParseError, match="line 2"):
        parse_canonical(good + "\n{oops\n")


def test_non_string_token_rejected():
    record = {
        "doc_key": "d",
        "language": "",
        "sentences": [["a", 3]],
        "entities": [],
        "plural_links": [],
    }
    with pytest.raises(CanonicalParseError, match=r"sentences\[0\]"):
        parse_canonical(json.dumps(record) + "\n")


def test_blank_lines_skipped_and_empty_input_empty():
    assert parse_canonical("") == []
    assert write_canonical([]) == ""
    doc = make_doc("d", [["a", "b"]], {0: [(0, 0, 1), (0, 1, 2)]})
    assert parse_canonical("\n" + write_canonical([doc]) + "\n\n") == [doc]


def test_expanded_flag_defaults_false():
    record = {
        "doc_key": "d",
        "language": "",
        "sentences": [["a"]],
        "entities": [],
        "plural_links": [],
    }
    (doc,) = parse_canonical(json.dumps(record))
    assert doc.expanded is False


def test_unicode_tokens_survive():
    doc = make_doc("d", [["கடுமையான", "।"]], {0: [(0, 0, 1), (0, 1, 2)]}, language="tam_Taml")
    text = write_canonical([doc])
    assert "கடுமையான" in text
    assert parse_canonical(text) == [doc]
