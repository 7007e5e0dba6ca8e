"""Summarization pipeline tests: mode selection, chain-of-thought merging,
budget discipline, replay determinism, and safety-block handling."""

import json

import pytest

from aqgr.chunker import ChunkConfig, estimate_tokens, split
from aqgr.corpus import PARENT_FIELDS, Judgment, SummaryStore
from aqgr.embed import DenseIndex, MockEmbeddingProvider
from aqgr.errors import SafetyBlockedDocError
from aqgr.gateway import (LlmGateway, MockProvider, RecordingProvider,
                          ReplayProvider, safety_blocked_result)
from aqgr.summarizer import (MODE_COT, MODE_SINGLE, SummarizeConfig,
                             _retrieve_chunk_context, plan_cot, resolve_mode,
                             summarize, summarize_with_info)



def step_json(**fields) -> str:
    return json.dumps(fields)


def make_provider():
    """Scripted per-step responses keyed on the step query's field words."""
    return MockProvider(rules=[
        (lambda p: "Statutes Referred" in p and "Facts" not in p,
         step_json(**{"Statutes Referred": [{"Name": "Evidence Act", "Principle": "pr"}],
                      "Precedents Referred": [{"Name": "Alpha v. Beta"}],
                      "New legal principle that can be applied to future cases":
                          {"Principle": "new principle"},
                      "Important Subjects Discussed": ["Subject One"]})),
        (lambda p: "Issues or Questions" in p and "Court" not in p,
         step_json(**{"Issues or Questions": ["Q one?"], "Reasoning of the Questions": "R",
                      "Case disposed of in favour of": "Appellant",
                      "Final Judgment": "Appeal allowed."})),
        (lambda p: "Facts" in p and "Court" not in p,
         step_json(Facts="the facts", Arguments="the arguments")),
        (lambda p: "Court" in p,
         step_json(Court="Supreme Court of India", **{"Case No": "CA 1 of 1980",
                   "Kind of Judgment": "Appeal", "Parties": "A v. B",
                   "Date": "1 May 1980", "Bench of Judges": "A Judge, J."})),
    ])


def full_single_response() -> str:
    return step_json(
        Court="Supreme Court of India", **{
            "Case No": "CA 9 of 1988",
            "Kind of Judgment": "Appeal",
            "Parties": "Someone v. Someone Else",
            "Date": "2 June 1988",
            "Bench of Judges": "A Judge, J.",
            "Facts": "facts here",
            "Arguments": "arguments here",
            "Issues or Questions": ["only issue?"],
            "Reasoning of the Questions": "because",
            "Case disposed of in favour of": "Respondent",
            "Final Judgment": "Dismissed.",
            "Statutes Referred": {"Some Act": {"Principle": "p"}},
            "Precedents Referred": [{"Name": "X v. Y", "Principle": "p2"}],
            "New legal principle that can be applied to future cases": "none",
            "Important Subjects Discussed": "One; Two",
        })


def test_plan_covers_all_parent_fields():
    plan = plan_cot(Judgment.from_text("D", "x" * 200_000))
    assert len(plan.steps) == 4
    covered = set()
    for step in plan.steps:
        covered.update(step.field_group)
    assert covered == set(PARENT_FIELDS)


def test_mode_resolution_thresholds():
    assert resolve_mode("auto", 56_435, 122_880) == MODE_SINGLE
    assert resolve_mode("auto", 122_880, 122_880) == MODE_SINGLE
    assert resolve_mode("auto", 122_881, 122_880) == MODE_COT
    assert resolve_mode("auto", 230_848, 122_880) == MODE_COT
    assert resolve_mode("single", 999_999, 122_880) == MODE_SINGLE
    assert resolve_mode("cot", 10, 122_880) == MODE_COT


def test_single_query_path_one_generate_call(long_docs):
    doc = Judgment.from_text("LD1", long_docs[56_435])
    provider = MockProvider(rules=[("", full_single_response())])
    gw = LlmGateway(provider)
    summary, info = summarize_with_info(doc, SummarizeConfig(), gw, MockEmbeddingProvider())
    assert info.mode == MODE_SINGLE
    assert info.generate_calls == 1
    assert summary.court == "Supreme Court of India"
    assert summary.source_judgment_id == "LD1"


def test_cot_path_four_calls_and_merge(long_docs):
    doc = Judgment.from_text("LD3", long_docs[230_848])
    provider = make_provider()
    gw = LlmGateway(provider)
    summary, info = summarize_with_info(doc, SummarizeConfig(), gw, MockEmbeddingProvider())
    assert info.mode == MODE_COT
    assert info.generate_calls == 4
    assert summary.court == "Supreme Court of India"
    assert summary.facts == "the facts"
    assert summary.issues_or_questions == ("Q one?",)
    assert summary.statutes_referred[0].name == "Evidence Act"
    assert summary.source_judgment_id == "LD3"
    # provenance: header fields from step 0, facts from step 1, and so on
    assert info.field_provenance["court"] == 0
    assert info.field_provenance["facts"] == 1
    assert info.field_provenance["reasoning"] == 2
    assert info.field_provenance["statutes_referred"] == 3


def test_merge_ignores_out_of_group_fields(long_docs):
    doc = Judgment.from_text("LD3", long_docs[230_848])
    provider = make_provider()
    # step 2 (facts) also returns a bogus court; the merge must not take it
    provider.rules.insert(0, (
        lambda p: "Facts" in p and "Court" not in p,
        step_json(Facts="the facts", Arguments="the arguments", Court="WRONG COURT"),
    ))
    gw = LlmGateway(provider)
    summary, _ = summarize_with_info(doc, SummarizeConfig(), gw, MockEmbeddingProvider())
    assert summary.court == "Supreme Court of India"


def test_budget_safety_every_call(long_docs):
    provider = make_provider()
    provider.rules.append(("", full_single_response()))
    gw = LlmGateway(provider)
    for size in (56_435, 230_848, 619_812):
        provider.calls.clear()
        doc = Judgment.from_text(f"LD{size}", long_docs[size])
        summarize(doc, SummarizeConfig(), gw, MockEmbeddingProvider())
        assert provider.calls
        for prompt in provider.calls:
            assert estimate_tokens(prompt) <= 30_720


def test_step_one_retrieves_document_head(long_docs):
    embedder = MockEmbeddingProvider()
    plan = plan_cot(Judgment.from_text("D", "x"))
    for size, text in long_docs.items():
        chunks = split("D", text, ChunkConfig())
        index = DenseIndex(embedder.dim)
        for chunk, vec in zip(chunks, embedder.embed([c.text for c in chunks])):
            index.add(chunk.doc_id, chunk.seq, vec)
        picked = _retrieve_chunk_context(index, chunks, embedder,
                                         plan.steps[0].query_text, 4)
        assert any(c.start_char == 0 for c in picked), size


def test_safety_block_leaves_store_untouched(tmp_path, long_docs):
    store = SummaryStore(tmp_path / "summaries")
    doc = Judgment.from_text("LD1", long_docs[56_435])
    gw = LlmGateway(MockProvider(rules=[("", safety_blocked_result())]))
    with pytest.raises(SafetyBlockedDocError):
        summary = summarize(doc, SummarizeConfig(), gw, MockEmbeddingProvider())
        store.put(summary)
    assert store.list() == []


def test_replay_determinism(tmp_path, long_docs):
    doc = Judgment.from_text("LD1", long_docs[56_435])
    embedder = MockEmbeddingProvider()
    recorder = RecordingProvider(MockProvider(rules=[("", full_single_response())]), tmp_path)
    first = summarize(doc, SummarizeConfig(), LlmGateway(recorder), embedder)

    replays = [summarize(doc, SummarizeConfig(), LlmGateway(ReplayProvider(tmp_path)),
                         embedder) for _ in range(2)]
    from aqgr.corpus import summary_to_dict
    blobs = {json.dumps(summary_to_dict(s), sort_keys=True) for s in [first, *replays]}
    assert len(blobs) == 1


def test_budget_feasibility_validation():
    cfg = SummarizeConfig(chunk_cfg=ChunkConfig(chunk_size=40_000, chunk_overlap=10_000),
                          retrieve_k=4)
    with pytest.raises(Exception):
        cfg.validate(30_720)
    SummarizeConfig().validate(30_720)
