#!/usr/bin/env python3
"""Record the replay fixtures for the Q1 end-to-end flow.

Runs the retrieval pipeline over the fixture corpus with a scripted
provider and records every prompt/response pair keyed by prompt hash into
tests/fixtures/replay/q1/. Also dumps the service-level response JSON used
by the frontend tests (fixture pair: top-3 selection vs only question 2).

Rerun and commit the output whenever prompt assembly, rendering, fusion,
or the fixture corpus changes.
"""

import json
import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from aqgr.corpus import SummaryRenderOptions, validate_summary  # noqa: E402
from aqgr.embed import MockEmbeddingProvider  # noqa: E402
from aqgr.gateway import LlmGateway, MockProvider, RecordingProvider  # noqa: E402
from aqgr.pipeline import (AqgrConfig, FactScenario, SearchIndexes,  # noqa: E402
                           generate_questions, retrieve_cases)
from fixture_texts import (Q1_QUESTIONS, QUESTIONS_RESPONSE,  # noqa: E402
                           RETRIEVE_RESPONSE_Q2_ONLY, RETRIEVE_RESPONSE_TOP3)

FIXTURES = ROOT / "tests" / "fixtures"
REPLAY_DIR = FIXTURES / "replay" / "q1"
FRONTEND_FIXTURES = ROOT / "frontend" / "tests" / "fixtures"

def build_provider() -> MockProvider:
    q1_head = Q1_QUESTIONS[0]
    q2_head = Q1_QUESTIONS[1]

    def questions_matcher(prompt: str) -> bool:
        return (prompt.startswith("What are the three legal issues")
                and "appointed as an officer in a bank" in prompt)

    def retrieve_top3_matcher(prompt: str) -> bool:
        return prompt.startswith("Just answer the Question:") and q1_head in prompt

    def retrieve_q2_matcher(prompt: str) -> bool:
        return (prompt.startswith("Just answer the Question:")
                and q2_head in prompt and q1_head not in prompt)

    return MockProvider(rules=[
        (questions_matcher, QUESTIONS_RESPONSE),
        (retrieve_top3_matcher, RETRIEVE_RESPONSE_TOP3),
        (retrieve_q2_matcher, RETRIEVE_RESPONSE_Q2_ONLY),
    ])


def case_payload(outcome) -> dict:
    return {
        "rankedCases": [{
            "caseRef": c.case_ref,
            "docId": c.resolved_doc_id,
            "score": c.relevance_score,
            "explanation": c.explanation,
            "matchedIssues": list(c.matched_issues),
        } for c in outcome.ranked_cases],
        "includedDocIds": list(outcome.included_doc_ids),
        "warnings": list(outcome.warnings),
    }


def main() -> int:
    summaries = {}
    for path in sorted((FIXTURES / "corpus" / "summaries").glob("*.json")):
        summary, _ = validate_summary(json.loads(path.read_text(encoding="utf-8")))
        summaries[summary.source_judgment_id] = summary

    embedder = MockEmbeddingProvider()
    indexes = SearchIndexes.build(summaries, SummaryRenderOptions(True, False), embedder)
    cfg = AqgrConfig()

    if REPLAY_DIR.exists():
        shutil.rmtree(REPLAY_DIR)
    provider = RecordingProvider(build_provider(), REPLAY_DIR)
    gw = LlmGateway(provider)

    fact = FactScenario(
        id="q1_fact",
        text=(FIXTURES / "queries" / "q1_fact.txt").read_text(encoding="utf-8").strip())

    questions = generate_questions(fact, gw, indexes, cfg)
    assert [q.text for q in questions] == Q1_QUESTIONS, questions
    top3 = retrieve_cases(fact, questions, cfg, indexes, gw, summaries)
    assert top3.ranked_cases[0].resolved_doc_id == "C14", top3.ranked_cases[0]
    assert top3.ranked_cases[0].relevance_score == 9

    for question in questions:
        question.selected = question.relevance_rank == 2
    q2_only = retrieve_cases(fact, questions, cfg, indexes, gw, summaries)
    assert q2_only.ranked_cases[0].resolved_doc_id == "C9", q2_only.ranked_cases[0]

    FRONTEND_FIXTURES.mkdir(parents=True, exist_ok=True)
    (FRONTEND_FIXTURES / "session_create.json").write_text(json.dumps({
        "sessionId": "fixture-session-1",
        "questions": [{"text": q.text, "relevanceRank": i + 1, "selected": True}
                      for i, q in enumerate(questions)],
    }, indent=2) + "\n", encoding="utf-8")
    (FRONTEND_FIXTURES / "retrieve_top3.json").write_text(
        json.dumps(case_payload(top3), indent=2) + "\n", encoding="utf-8")
    (FRONTEND_FIXTURES / "retrieve_q2_only.json").write_text(
        json.dumps(case_payload(q2_only), indent=2) + "\n", encoding="utf-8")

    count = len(list(REPLAY_DIR.glob("*.json")))
    print(f"recorded {count} replay fixtures under {REPLAY_DIR}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
