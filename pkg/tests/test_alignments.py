import pytest

from corefkit.alignments import AlignmentParseError, parse_alignments, write_alignments


def test_basic_pairs():
    assert parse_alignments("0-1 1-0 2-2\n") == [frozenset({(0, 1), (1, 0), (2, 2)})]


def test_empty_line_is_empty_map():
    assert parse_alignments("\n") == [frozenset()]


def test_duplicates_collapse():
    assert parse_alignments("0-1 0-1\n") == [frozenset({(0, 1)})]


def test_order_and_duplication_invariance():
    a = parse_alignments("0-1 1-0 2-2\n")
    b = parse_alignments("2-2 0-1 1-0 0-1\n")
    assert a == b


def test_multiple_lines_give_multiple_maps():
    maps = parse_alignments("0-0\n\n1-2 0-1\n")
    assert maps == [frozenset({(0, 0)}), frozenset(), frozenset({(1, 2), (0, 1)})]


@pytest.mark.parametrize("bad", ["0--1", "x-1", "1-", "0:1", "-1-2"])
def test_malformed_pairs_rejected_with_line_number(bad):
    with pytest.raises(AlignmentParseError, match="line 2"):
        parse_alignments(f"0-0\n{bad}\n")


def test_write_then_parse_round_trip():
    maps = [frozenset({(2, 0), (0, 1)}), frozenset(), frozenset({(1, 1)})]
    text = write_alignments(maps)
    assert text == "0-1 2-0\n\n1-1\n"
    assert parse_alignments(text) == maps
