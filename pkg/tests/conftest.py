"""Shared fixtures: the committed corpus, synthetic long documents, and a
context-aware scripted provider used by evaluation and service tests."""

import json
import random
import re
from pathlib import Path

import pytest

from aqgr import kernels
from aqgr.corpus import StructuredSummary, SummaryRenderOptions, validate_summary
from aqgr.embed import MockEmbeddingProvider
from aqgr.gateway import GenerationResult, safety_blocked_result
from aqgr.pipeline import SearchIndexes

FIXTURES = Path(__file__).parent / "fixtures"

# word/char sizes of the five long reference documents used for chunker
# and long-document summarization tests
LONG_DOC_SIZES = [56_435, 101_107, 230_848, 417_550, 619_812]


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    kernels.warmup()


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_summaries() -> dict[str, StructuredSummary]:
    out = {}
    for path in sorted((FIXTURES / "corpus" / "summaries").glob("*.json")):
        summary, _ = validate_summary(json.loads(path.read_text(encoding="utf-8")))
        out[summary.source_judgment_id] = summary
    return out


@pytest.fixture(scope="session")
def corpus_judgment_texts() -> dict[str, str]:
    return {path.stem: path.read_text(encoding="utf-8")
            for path in sorted((FIXTURES / "corpus" / "judgments").glob("*.txt"))}


@pytest.fixture(scope="session")
def mock_embedder() -> MockEmbeddingProvider:
    return MockEmbeddingProvider()


@pytest.fixture(scope="session")
def full_indexes(corpus_summaries, mock_embedder) -> SearchIndexes:
    return SearchIndexes.build(corpus_summaries, SummaryRenderOptions(True, False),
                               mock_embedder)


@pytest.fixture(scope="session")
def q1_fact_text() -> str:
    return (FIXTURES / "queries" / "q1_fact.txt").read_text(encoding="utf-8").strip()


# ---------------------------------------------------------------------------
# synthetic long documents with court-style headers

_HEADER = (
    "IN THE SUPREME COURT OF INDIA\n"
    "CIVIL APPELLATE JURISDICTION\n"
    "{case_no}\n"
    "COURT: SUPREME COURT OF INDIA\n"
    "CASE NO: {case_no}\n"
    "KIND OF JUDGMENT: CIVIL APPEAL\n\n"
    "PARTIES:\n"
    "MEGHRAJ ENTERPRISES PRIVATE LIMITED ... APPELLANT\n"
    "VERSUS\n"
    "THE CHIEF CONTROLLING AUTHORITY ... RESPONDENT\n\n"
    "PARTIES REPRESENTED BY COUNSEL FOR THE APPELLANT AND FOR THE RESPONDENT\n"
    "DATE OF HEARING: 11 MARCH 1984\n"
    "DATE OF JUDGMENT: 28 MARCH 1984\n"
    "BENCH: TWO LEARNED JUDGES OF THIS COURT\n"
    "BENCH OF JUDGES: AS PER THE CAUSE LIST OF THE COURT\n"
    "CORAM: THE BENCH AS CONSTITUTED FOR CIVIL APPEAL MATTERS\n"
    "ON APPEAL FROM THE HIGH COURT, BY SPECIAL LEAVE PETITION\n"
    "JUDGMENT OF THE COURT IN THE CIVIL APPEAL, DATE AS BELOW\n"
    "COURT MASTER: CASE AND PARTIES AS PER THE RECORD OF THE COURT\n\n"
    "J U D G M E N T\n\n"
)

_BODY_WORDS = [
    "record", "material", "tribunal", "finding", "transaction", "ledger", "entries",
    "witness", "deposition", "award", "claim", "liability", "interest", "amount",
    "statute", "provision", "reading", "construction", "scheme", "remedy", "relief",
    "hearing", "notice", "reply", "order", "challenge", "ground", "submission",
]


def make_long_doc(n_chars: int, seed: int = 7) -> str:
    """Deterministic long document of exactly n_chars with a header at offset 0."""
    rng = random.Random(seed + n_chars)
    head = _HEADER.format(case_no=f"CIVIL APPEAL NO. {n_chars % 9973} OF 1984")
    parts = [head]
    length = len(head)
    para_no = 1
    while length < n_chars:
        sentences = []
        for _ in range(rng.randint(4, 8)):
            words = " ".join(rng.choice(_BODY_WORDS) for _ in range(rng.randint(9, 16)))
            sentences.append(words.capitalize() + ".")
        para = f"{para_no}. " + " ".join(sentences) + "\n\n"
        parts.append(para)
        length += len(para)
        para_no += 1
    text = "".join(parts)[:n_chars]
    assert len(text) == n_chars
    return text


@pytest.fixture(scope="session")
def long_docs() -> dict[int, str]:
    return {size: make_long_doc(size) for size in LONG_DOC_SIZES}


# ---------------------------------------------------------------------------
# context-aware scripted provider

_PARTIES_LINE_RE = re.compile(r"^\s*Parties: (.+)$", re.MULTILINE)


def _party_names(line: str) -> str:
    names = []
    for segment in line.split("; "):
        _, _, name = segment.partition(": ")
        if name:
            names.append(name)
    return " v. ".join(names[:2]) if len(names) > 1 else (names[0] if names else "")


class ContextAwareMock:
    """Deterministic stand-in provider for whole-pipeline runs.

    Question prompts get three questions built from the fact's own words;
    ranking prompts name the first few cases found in the supplied context,
    so the anti-hallucination gate always has something real to verify.
    """

    def __init__(self, n_cases: int = 5, block_when: str | None = None):
        self.n_cases = n_cases
        self.block_when = block_when
        self.calls: list[str] = []

    def generate_raw(self, request) -> GenerationResult:
        prompt = request.prompt_text
        self.calls.append(prompt)
        if self.block_when and self.block_when in prompt:
            return safety_blocked_result("scripted block")
        if prompt.startswith("What are the three legal issues"):
            fact = prompt.rsplit("Question: ", 1)[-1]
            words = fact.split()
            thirds = max(1, len(words) // 3)
            questions = []
            for i in range(3):
                window = " ".join(words[i * thirds:(i + 1) * thirds][:14])
                questions.append(f"{i + 1}. Whether relief arises where {window}")
            return GenerationResult(text="\n".join(questions))
        if prompt.startswith("Just answer the Question:"):
            refs = []
            for line in _PARTIES_LINE_RE.findall(prompt):
                name = _party_names(line)
                if name and name not in refs:
                    refs.append(name)
            refs = refs[:self.n_cases]
            blocks = ["Relevant Judgments:"]
            for i, ref in enumerate(refs):
                blocks.append(f"{i + 1}. **{ref}**\n   Relevance Score: {9 - i}\n"
                              f"   Reason: The cited decision addresses the same class of "
                              f"dispute on materially similar facts.")
            return GenerationResult(text="\n".join(blocks))
        return GenerationResult(text="{}")


@pytest.fixture()
def context_mock() -> ContextAwareMock:
    return ContextAwareMock()
