"""Summary validation, rendering, and store tests.

The raw-input fixtures mimic generative output shapes: template-style
capitalized keys, single objects where lists belong, and name-keyed
authority maps.
"""

import json
import statistics

import pytest

from aqgr.corpus import (PARENT_FIELDS, CitedAuthority, Judgment, JudgmentStore, Party,
                         StructuredSummary, SummaryRenderOptions, SummaryStore,
                         render_for_index, summary_to_dict, validate_summary)
from aqgr.errors import AqgrError, NotAnObjectError, NotFoundError, UnrecoverableShapeError

FULL = SummaryRenderOptions(include_precedents=True, compact=False)
FULL_NO_PRECEDENTS = SummaryRenderOptions(include_precedents=False, compact=False)
COMPACT = SummaryRenderOptions(include_precedents=True, compact=True)


RAW_TEMPLATE_STYLE = {
    "Court": "Supreme Court of India",
    "Case No": "Civil Appeal No. 562 of 1985",
    "Kind of Judgment": "Appeal",
    "Parties": {"Appellant": "West Bengal State Electricity Board and Others",
                "Respondent": "Desh Bandhu Ghosh and Others"},
    "Date": "26 February 1985",
    "Bench of Judges": "O. Chinnappa Reddy, J.",
    "Facts": "Termination of respondent's services without reasons under Regulation 34.",
    "Arguments": "Regulation 34 does not offend Article 14; the rule is arbitrary.",
    "Issues or Questions": "Whether Regulation 34 is arbitrary and violative of Article 14.",
    "Reasoning of the Questions": "Regulation 34 confers a power capable of discrimination.",
    "Case disposed of in favour of": "Respondent",
    "Final Judgment": "Appeal dismissed with costs.",
    "Statutes Referred": {"Electricity Supply Act": {
        "Principle": "Guidelines for termination of services.",
        "Application": "Sections 18A and 19 provide some guidelines."}},
    "Precedents Referred": {"Moti Ram Deka v. North East Frontier Railway": {
        "Principle": "Rules allowing termination without inquiry may be unconstitutional.",
        "Application": "Cited as an example of a rule struck down."}},
    "New legal principle that can be applied to future cases": {
        "Principle": "Arbitrary powers of termination are void.",
        "Application": "Applies to future termination rule challenges."},
    "Important Subjects Discussed": "Arbitrary Power; Natural Justice",
    "source_judgment_id": "C9",
}


def test_validate_template_style_keys():
    summary, warnings = validate_summary(RAW_TEMPLATE_STYLE)
    assert summary.court == "Supreme Court of India"
    assert summary.case_no == "Civil Appeal No. 562 of 1985"
    assert summary.parties == (
        Party("appellant", "West Bengal State Electricity Board and Others"),
        Party("respondent", "Desh Bandhu Ghosh and Others"),
    )
    assert summary.statutes_referred == (CitedAuthority(
        name="Electricity Supply Act",
        principle="Guidelines for termination of services.",
        application="Sections 18A and 19 provide some guidelines."),)
    assert summary.precedents_referred[0].name == "Moti Ram Deka v. North East Frontier Railway"
    assert summary.issues_or_questions == (
        "Whether Regulation 34 is arbitrary and violative of Article 14.",)
    assert not [w for w in warnings if w.startswith("missing")]


def test_empty_object_gives_all_empty_plus_17_warnings():
    summary, warnings = validate_summary({})
    assert len(PARENT_FIELDS) == 17
    assert len([w for w in warnings if w.startswith("missing field:")]) == 17
    assert len(warnings) == 17
    for name in PARENT_FIELDS:
        assert getattr(summary, name) in ("", ())


@pytest.mark.parametrize("raw,field,expected", [
    ({"precedentsReferred": {"Name": "A v. B", "Principle": "p", "Application": "x"}},
     "precedents_referred", (CitedAuthority("A v. B", "p", "x"),)),
    ({"issues_or_questions": "a single question"}, "issues_or_questions",
     ("a single question",)),
    ({"statutes_referred": "Evidence Act"}, "statutes_referred",
     (CitedAuthority("Evidence Act"),)),
    ({"parties": "Ram Kumar v. State of Bihar"}, "parties",
     (Party("appellant", "Ram Kumar"), Party("respondent", "State of Bihar"))),
    ({"important_subjects": "Natural Justice"}, "important_subjects",
     ("Natural Justice",)),
])
def test_single_object_promoted_to_list(raw, field, expected):
    summary, _ = validate_summary(raw)
    assert getattr(summary, field) == expected


def test_not_an_object():
    with pytest.raises(NotAnObjectError):
        validate_summary([1, 2, 3])
    with pytest.raises(NotAnObjectError):
        validate_summary("text")


def test_unrecoverable_shapes():
    with pytest.raises(UnrecoverableShapeError):
        validate_summary({"parties": 7})
    with pytest.raises(UnrecoverableShapeError):
        validate_summary({"statutes_referred": 42})
    # multiple bad fields reported together
    with pytest.raises(UnrecoverableShapeError) as err:
        validate_summary({"parties": 7, "precedents_referred": 3.5})
    assert "parties" in str(err.value) and "precedents_referred" in str(err.value)


def test_nameless_authority_skipped_with_warning():
    summary, warnings = validate_summary(
        {"precedents_referred": [{"Principle": "p only"}, "Named v. Case"]})
    assert summary.precedents_referred == (CitedAuthority("Named v. Case"),)
    assert any("without a name" in w for w in warnings)


def test_unknown_keys_warn_and_are_ignored():
    summary, warnings = validate_summary({"Court": "X", "Bogus Key": 1})
    assert summary.court == "X"
    assert any("unknown field" in w for w in warnings)


def test_round_trip_all_fixture_summaries(corpus_summaries):
    assert len(corpus_summaries) == 50
    for summary in corpus_summaries.values():
        back, warnings = validate_summary(summary_to_dict(summary))
        assert back == summary
        assert warnings == []


def test_round_trip_party_roles():
    summary = StructuredSummary(
        parties=(Party("petitioner", "A"), Party("other", "B")),
        source_judgment_id="X1")
    back, _ = validate_summary(summary_to_dict(summary))
    assert back.parties == summary.parties


# ---------------------------------------------------------------------------
# rendering

def test_render_full_contains_precedent_name(corpus_summaries):
    text = render_for_index(corpus_summaries["C9"], FULL)
    assert "Moti Ram Deka" in text
    assert text.startswith("Parties: Appellant: West Bengal State Electricity Board")


def test_render_without_precedents_omits_them(corpus_summaries):
    text = render_for_index(corpus_summaries["C9"], FULL_NO_PRECEDENTS)
    assert "Moti Ram Deka" not in text
    assert "Precedents Referred" not in text


def test_precedent_authority_superset(corpus_summaries):
    for summary in corpus_summaries.values():
        with_p = render_for_index(summary, FULL)
        without_p = render_for_index(summary, FULL_NO_PRECEDENTS)
        for authority in summary.statutes_referred:
            assert authority.name in with_p and authority.name in without_p
        for precedent in summary.precedents_referred:
            assert precedent.name in with_p
            assert precedent.name not in without_p


def test_compact_field_subset(corpus_summaries):
    for summary in corpus_summaries.values():
        compact = render_for_index(summary, COMPACT)
        assert "Final Judgment:" not in compact
        assert "Statutes Referred:" not in compact
        assert "Court:" not in compact
        assert compact.startswith("Parties:")
        if summary.facts:
            assert "Facts:" in compact


def test_render_deterministic(corpus_summaries):
    summary = corpus_summaries["C9"]
    assert render_for_index(summary, FULL) == render_for_index(summary, FULL)
    assert render_for_index(summary, COMPACT) == render_for_index(summary, COMPACT)


def test_compact_never_longer_than_full(corpus_summaries):
    for summary in corpus_summaries.values():
        assert len(render_for_index(summary, COMPACT)) <= len(render_for_index(summary, FULL))


def test_fixture_render_length_budgets(corpus_summaries):
    fulls = [len(render_for_index(s, FULL)) for s in corpus_summaries.values()]
    compacts = [len(render_for_index(s, COMPACT)) for s in corpus_summaries.values()]
    assert 3000 <= statistics.mean(fulls) <= 5000
    assert 1500 <= statistics.mean(compacts) <= 2500


def test_render_empty_summary():
    text = render_for_index(StructuredSummary(), FULL)
    assert text == "Parties:"


# ---------------------------------------------------------------------------
# stores

def test_summary_store_round_trip(tmp_path, corpus_summaries):
    store = SummaryStore(tmp_path / "summaries")
    doc_id = store.put(corpus_summaries["C9"])
    assert doc_id == "C9"
    assert store.get("C9") == corpus_summaries["C9"]


def test_summary_store_not_found(tmp_path):
    store = SummaryStore(tmp_path / "summaries")
    with pytest.raises(NotFoundError):
        store.get("missing")


def test_summary_store_list_sorted(tmp_path, corpus_summaries):
    store = SummaryStore(tmp_path / "summaries")
    for summary in corpus_summaries.values():
        store.put(summary)
    ids = store.list()
    assert len(ids) == 50
    assert ids == sorted(ids)
    assert not list((tmp_path / "summaries").glob("*.tmp"))


def test_summary_store_requires_source_id(tmp_path):
    store = SummaryStore(tmp_path / "s")
    with pytest.raises(AqgrError):
        store.put(StructuredSummary())


def test_judgment_store(tmp_path):
    store = JudgmentStore(tmp_path / "judgments")
    judgment = Judgment.from_text("C1", "Short judgment text over a few words.")
    store.put(judgment)
    back = store.get("C1")
    assert back == judgment
    assert store.list() == ["C1"]
    with pytest.raises(NotFoundError):
        store.get("C2")
    with pytest.raises(AqgrError):
        store.path_for("../evil")


def test_judgment_counts_unicode():
    judgment = Judgment.from_text("C1", "café au lait")
    assert judgment.char_count == 12
    assert judgment.word_count == 3
    assert Judgment.from_text("C2", "").char_count == 0


def test_json_file_matches_schema(tmp_path, corpus_summaries):
    store = SummaryStore(tmp_path)
    store.put(corpus_summaries["C14"])
    raw = json.loads((tmp_path / "C14.json").read_text())
    assert set(raw) == set(PARENT_FIELDS)
