import random

import pytest

from corefkit.core import (
    CorefDataError,
    Document,
    Entity,
    PluralLink,
    Span,
    expand_split_antecedents,
    strip_singletons,
    validate_document,
)

from helpers import make_doc, pathology_doc, random_document


class TestValidateDocument:
    def test_well_formed_doc_has_no_violations(self):
        doc = make_doc(
            "d", [["a", "b", "c"], ["d", "e"]], {0: [(0, 0, 2), (1, 0, 1)]}
        )
        assert validate_document(doc) == []

    def test_span_end_beyond_sentence_length(self):
        doc = make_doc("d", [["a", "b"]], {0: [(0, 0, 3)]})
        violations = validate_document(doc)
        assert len(violations) == 1
        assert "end exceeds sentence 0 length 2" in violations[0]

    def test_plural_link_naming_missing_entity(self):
        doc = make_doc(
            "d",
            [["a", "b", "c"]],
            {0: [(0, 0, 1)], 1: [(0, 1, 2)]},
            plural_links=[((0, 1, 2), [0, 7])],
        )
        violations = validate_document(doc)
        assert len(violations) == 1
        assert "missing entity 7" in violations[0]

    def test_sentence_index_out_of_range(self):
        doc = make_doc("d", [["a"]], {0: [(3, 0, 1)]})
        assert any("sentence index out of range" in v for v in validate_document(doc))

    def test_empty_or_inverted_span(self):
        doc = make_doc("d", [["a", "b"]], {0: [(0, 1, 1)]})
        assert any("empty or inverted" in v for v in validate_document(doc))

    def test_duplicate_entity_ids(self):
        doc = Document(
            "d",
            "",
            (("a", "b"),),
            (Entity(0, (Span(0, 0, 1),)), Entity(0, (Span(0, 1, 2),))),
        )
        assert any("duplicate entity id 0" in v for v in validate_document(doc))

    def test_span_shared_between_entities_flagged_when_not_expanded(self):
        doc = make_doc("d", [["a", "b"]], {0: [(0, 0, 1)], 1: [(0, 0, 1)]})
        assert any("appears in entities 0 and 1" in v for v in validate_document(doc))
        relaxed = make_doc(
            "d", [["a", "b"]], {0: [(0, 0, 1)], 1: [(0, 0, 1)]}, expanded=True
        )
        assert validate_document(relaxed) == []

    def test_anaphor_not_a_mention(self):
        doc = make_doc(
            "d",
            [["a", "b", "c"]],
            {0: [(0, 0, 1)], 1: [(0, 1, 2)]},
            plural_links=[((0, 2, 3), [0, 1])],
        )
        assert any("not a mention of any entity" in v for v in validate_document(doc))

    def test_too_few_antecedents(self):
        doc = make_doc(
            "d",
            [["a", "b"]],
            {0: [(0, 0, 1)], 1: [(0, 1, 2)]},
            plural_links=[((0, 1, 2), [0])],
        )
        assert any("fewer than 2 antecedent" in v for v in validate_document(doc))


class TestExpandSplitAntecedents:
    def test_pathology_fixture_expansion(self, pathology):
        expanded = expand_split_antecedents(pathology)
        assert expanded.expanded
        assert expanded.plural_links == ()
        by_id = {e.id: set(e.mentions) for e in expanded.entities}
        c, d = Span(1, 0, 1), Span(2, 0, 1)
        assert by_id == {
            0: {Span(0, 0, 1), Span(3, 0, 5), c, d},
            1: {Span(0, 7, 8), Span(3, 6, 11), c, d},
        }

    def test_membership_count_grows_from_6_to_8(self, pathology):
        before = sum(len(e) for e in pathology.entities)
        after = sum(len(e) for e in expand_split_antecedents(pathology).entities)
        assert (before, after) == (6, 8)

    def test_no_plural_links_is_identity(self):
        doc = make_doc("d", [["a", "b"]], {0: [(0, 0, 1), (0, 1, 2)]})
        assert expand_split_antecedents(doc) is doc

    def test_anaphor_only_plural_entity(self):
        doc = make_doc(
            "d",
            [["x", "y", "p"]],
            {0: [(0, 0, 1)], 1: [(0, 1, 2)], 2: [(0, 2, 3)]},
            plural_links=[((0, 2, 3), [0, 1])],
        )
        expanded = expand_split_antecedents(doc)
        by_id = {e.id: set(e.mentions) for e in expanded.entities}
        p = Span(0, 2, 3)
        assert by_id == {
            0: {Span(0, 0, 1), p},
            1: {Span(0, 1, 2), p},
        }

    def test_double_expansion_rejected(self, pathology):
        expanded = expand_split_antecedents(pathology)
        with pytest.raises(CorefDataError, match="already expanded"):
            expand_split_antecedents(expanded)

    def test_dangling_antecedent_rejected(self):
        doc = make_doc(
            "d",
            [["x", "p"]],
            {0: [(0, 0, 1)], 2: [(0, 1, 2)]},
            plural_links=[((0, 1, 2), [0, 9])],
        )
        with pytest.raises(CorefDataError, match="missing entity 9"):
            expand_split_antecedents(doc)

    def test_expansion_of_valid_doc_validates_cleanly(self):
        rng = random.Random(7)
        for trial in range(50):
            doc = random_document(rng, f"doc{trial}", require_link=True)
            # attach a plural link between two random entities when possible
            if len(doc.entities) >= 3:
                anaphor = doc.entities[-1].mentions[0]
                doc = Document(
                    doc.doc_key,
                    doc.language,
                    doc.sentences,
                    doc.entities,
                    (PluralLink(anaphor, (doc.entities[0].id, doc.entities[1].id)),),
                )
            assert validate_document(doc) == []
            expanded = expand_split_antecedents(doc)
            assert validate_document(expanded) == []


class TestStripSingletons:
    def test_drops_singleton_entities(self):
        doc = make_doc("d", [["a", "b", "c"]], {0: [(0, 0, 1), (0, 1, 2)], 1: [(0, 2, 3)]})
        stripped = strip_singletons(doc)
        assert [e.id for e in stripped.entities] == [0]

    def test_all_singletons_gives_empty_doc(self):
        doc = make_doc("d", [["a", "b"]], {0: [(0, 0, 1)], 1: [(0, 1, 2)]})
        assert strip_singletons(doc).entities == ()

    def test_link_removed_when_antecedent_drops(self):
        doc = make_doc(
            "d",
            [["a", "b", "c", "p"]],
            {0: [(0, 0, 1), (0, 1, 2), (0, 3, 4)], 1: [(0, 2, 3)]},
            plural_links=[((0, 3, 4), [0, 1])],
        )
        stripped = strip_singletons(doc)
        assert [e.id for e in stripped.entities] == [0]
        assert stripped.plural_links == ()

    def test_idempotent(self):
        rng = random.Random(11)
        for trial in range(30):
            doc = random_document(rng, f"doc{trial}")
            once = strip_singletons(doc)
            assert strip_singletons(once) == once


def test_document_equality_is_order_insensitive():
    spans = [Span(0, 0, 1), Span(0, 1, 2)]
    d1 = Document("d", "", (("a", "b"),), (Entity(1, (spans[1],)), Entity(0, (spans[0],))))
    d2 = Document("d", "", (("a", "b"),), (Entity(0, (spans[0],)), Entity(1, (spans[1],))))
    assert d1 == d2


def test_entity_mentions_deduplicate():
    e = Entity(0, (Span(0, 0, 1), Span(0, 0, 1)))
    assert len(e) == 1
