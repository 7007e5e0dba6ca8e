"""Question-guided retrieval: generate candidate legal questions for a
factual scenario, retrieve summaries with the fact + selected questions as
an augmented query through the sparse/dense ensemble, assemble a budgeted
context, and parse the model's ranked cases.

Two hallucination guards apply to the parsed cases: a case must appear in
the context that was actually supplied (normalized party-name containment)
or it is dropped with a warning, and a case only gets a resolved document
id when exactly one included summary matches it.
"""

import json
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .chunker import estimate_tokens
from .corpus import StructuredSummary, SummaryRenderOptions, render_for_index
from .embed import DenseIndex
from .errors import (AqgrError, EmptyCorpusError, MalformedOutputError,
                     SafetyBlockedQueryError)
from .fusion import FusionConfig, RetrievalHit, dedupe_to_judgments, fuse
from .gateway import (TEMPLATE_LEGAL_QUESTIONS, TEMPLATE_RANK_CASES, GenerationRequest,
                      LlmGateway, generate_parsed, load_template, render_prompt)
from .sparse import SparseIndex

DEFAULT_QUESTIONS_TO_SELECT = 3
DEFAULT_CONTEXT_RESERVE_TOKENS = 1_500

_CONTEXT_SEPARATOR = "\n\n"


@dataclass(frozen=True)
class FactScenario:
    id: str
    text: str


@dataclass
class LegalQuestion:
    text: str
    relevance_rank: int
    selected: bool = True


@dataclass(frozen=True)
class RankedCase:
    case_ref: str
    relevance_score: int
    explanation: str
    matched_issues: tuple[int, ...] = ()
    resolved_doc_id: str | None = None


@dataclass(frozen=True)
class AqgrConfig:
    questions_to_select: int = DEFAULT_QUESTIONS_TO_SELECT
    fusion: FusionConfig = field(default_factory=FusionConfig)
    render_opts: SummaryRenderOptions = field(default_factory=SummaryRenderOptions)
    context_reserve_tokens: int = DEFAULT_CONTEXT_RESERVE_TOKENS

    def validate(self) -> None:
        if self.questions_to_select < 1:
            raise AqgrError(f"questions_to_select must be >= 1, got {self.questions_to_select}")
        self.fusion.validate()


# ---------------------------------------------------------------------------
# indexes over rendered summaries

class SearchIndexes:
    """Sealed sparse + dense pair over identically rendered summaries."""

    def __init__(self, sparse_index: SparseIndex, dense_index: DenseIndex,
                 renders: dict[str, str], render_opts: SummaryRenderOptions, embedder):
        self.sparse = sparse_index
        self.dense = dense_index
        self.renders = renders
        self.render_opts = render_opts
        self.embedder = embedder

    @classmethod
    def build(cls, summaries: dict[str, StructuredSummary],
              render_opts: SummaryRenderOptions, embedder,
              k1: float = 1.2, b: float = 0.75) -> "SearchIndexes":
        doc_ids = sorted(summaries)
        renders = {doc_id: render_for_index(summaries[doc_id], render_opts)
                   for doc_id in doc_ids}
        sparse_index = SparseIndex.build([(doc_id, renders[doc_id]) for doc_id in doc_ids],
                                         k1=k1, b=b)
        dense_index = DenseIndex(embedder.dim)
        vectors = embedder.embed([renders[doc_id] for doc_id in doc_ids])
        for doc_id, vec in zip(doc_ids, vectors):
            dense_index.add(doc_id, 0, vec)
        dense_index.seal()
        return cls(sparse_index, dense_index, renders, render_opts, embedder)

    def __len__(self) -> int:
        return len(self.renders)

    def query(self, text: str, fusion_cfg: FusionConfig) -> list[RetrievalHit]:
        """Fused judgment-level hits for one query string."""
        k = fusion_cfg.per_retriever_k
        sparse_hits = self.sparse.search(text, k)
        dense_hits = self.dense.search(self.embedder.embed([text])[0], k)
        return dedupe_to_judgments(fuse(sparse_hits, dense_hits, fusion_cfg))

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        self.sparse.save(directory / "sparse.jsonl")
        self.dense.save(directory / "dense.bin")
        meta = {
            "version": 1,
            "doc_ids": sorted(self.renders),
            "include_precedents": self.render_opts.include_precedents,
            "compact": self.render_opts.compact,
            "dim": self.dense.dim,
        }
        (directory / "meta.json").write_text(json.dumps(meta, indent=2) + "\n",
                                             encoding="utf-8")

    @classmethod
    def load(cls, directory: str | Path, summaries: dict[str, StructuredSummary],
             embedder) -> "SearchIndexes":
        directory = Path(directory)
        meta = json.loads((directory / "meta.json").read_text(encoding="utf-8"))
        render_opts = SummaryRenderOptions(include_precedents=meta["include_precedents"],
                                           compact=meta["compact"])
        renders = {doc_id: render_for_index(summaries[doc_id], render_opts)
                   for doc_id in meta["doc_ids"] if doc_id in summaries}
        missing = [doc_id for doc_id in meta["doc_ids"] if doc_id not in summaries]
        if missing:
            raise AqgrError(f"index references summaries missing from the store: {missing[:5]}")
        return cls(SparseIndex.load(directory / "sparse.jsonl"),
                   DenseIndex.load(directory / "dense.bin"),
                   renders, render_opts, embedder)


# ---------------------------------------------------------------------------
# context assembly

def assemble_context(hits: list[RetrievalHit], renders: dict[str, str],
                     budget_tokens: int) -> tuple[str, list[str]]:
    """Greedy first-fit context fill in fused-rank order.

    A summary that would overflow the remaining budget is skipped and the
    next one tried; the returned id list preserves inclusion order.
    """
    if budget_tokens <= 0:
        return "", []
    context = ""
    included: list[str] = []
    for hit in hits:
        render = renders.get(hit.doc_key)
        if render is None:
            continue
        candidate = render if not context else context + _CONTEXT_SEPARATOR + render
        if estimate_tokens(candidate) <= budget_tokens:
            context = candidate
            included.append(hit.doc_key)
    return context, included


# ---------------------------------------------------------------------------
# model-output parsing

_BULLET_RE = re.compile(r"^\s*(?:\(?(\d{1,2})\)?[.):]\s+|[-*•◦]\s+)(.*\S)\s*$")
_SCORE_RE = re.compile(r"relevance\s*score\s*[:\-]?\s*\(?(\d{1,2})", re.IGNORECASE)
_CASE_LAW_RE = re.compile(r"case\s*law\s*:\s*(.+?)\s*$", re.IGNORECASE | re.MULTILINE)
_LABEL_VALUE_RE = re.compile(r"^\s*[-*•◦]?\s*(reason(?:ing)?)\s*:\s*(.*\S)?\s*$",
                             re.IGNORECASE)


def parse_question_list(text: str) -> list[str]:
    """Extract a numbered or bulleted list of questions, in order."""
    items: list[str] = []
    open_item = False
    for line in text.splitlines():
        match = _BULLET_RE.match(line)
        if match:
            items.append(match.group(2).strip())
            open_item = True
        elif not line.strip():
            open_item = False
        elif open_item:
            items[-1] += " " + line.strip()
    if not items:
        raise MalformedOutputError("no list structure in question output", raw_text=text)
    return items


def _strip_markup(text: str) -> str:
    return text.replace("**", "").strip().strip(":").strip()


def parse_ranked_cases(text: str) -> list[dict]:
    """Canonicalize both observed response shapes into case dicts.

    Shape A: numbered cases, each with a score and reason underneath.
    Shape B: numbered legal issues, each naming a case via "Case Law:".
    """
    blocks: list[tuple[int | None, list[str]]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        match = _BULLET_RE.match(line)
        if match and match.group(1) is not None:
            blocks.append((int(match.group(1)), [match.group(2).strip()]))
            continue
        if not blocks:
            blocks.append((None, [line.strip()]))
        else:
            blocks[-1][1].append(line.strip())

    cases: list[dict] = []
    for number, lines in blocks:
        body = "\n".join(lines)
        case_match = _CASE_LAW_RE.search(body)
        score_match = _SCORE_RE.search(body)
        explanation = ""
        for line in lines:
            label = _LABEL_VALUE_RE.match(line)
            if label:
                explanation = (label.group(2) or "").strip()
                break
        if case_match:
            # issue-first shape: the block number indexes the question
            name = _strip_markup(case_match.group(1))
            issues = (number,) if number is not None else ()
        else:
            name = _strip_markup(lines[0])
            issues = ()
            if _SCORE_RE.match(lines[0]) or not name:
                continue
        if not name or score_match is None and len(lines) == 1 and not case_match:
            # bare list line without any case structure; not a ranked case
            continue
        cases.append({
            "case_ref": name,
            "score": int(score_match.group(1)) if score_match else None,
            "explanation": explanation,
            "matched_issues": issues,
        })

    merged: dict[str, dict] = {}
    for case in cases:
        key = normalize_case_ref(case["case_ref"])
        if not key:
            continue
        if key in merged:
            existing = merged[key]
            existing["matched_issues"] = existing["matched_issues"] + case["matched_issues"]
            if case["score"] is not None and (existing["score"] or 0) < case["score"]:
                existing["score"] = case["score"]
            if not existing["explanation"]:
                existing["explanation"] = case["explanation"]
        else:
            merged[key] = case
    if not merged:
        raise MalformedOutputError("no ranked cases in model output", raw_text=text)
    return list(merged.values())


_PUNCT_RE = re.compile(r"[^\w\s]", re.UNICODE)
_SKIP_TOKENS = {"v", "vs", "versus"}


def normalize_case_ref(text: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace, drop v/vs/versus."""
    cleaned = _PUNCT_RE.sub(" ", text.lower())
    return " ".join(tok for tok in cleaned.split() if tok not in _SKIP_TOKENS)


# ---------------------------------------------------------------------------
# pipeline operations

def generate_questions(fact: FactScenario, gw: LlmGateway, indexes: SearchIndexes,
                       cfg: AqgrConfig, k: int | None = None,
                       request_defaults: GenerationRequest | None = None
                       ) -> list[LegalQuestion]:
    """Generate candidate legal questions, ranked by stated relevance.

    Retrieved summary snippets ride along as in-context examples; the
    question template binds the factual scenario itself as the question.
    """
    if not fact.text.strip():
        raise AqgrError("fact scenario text is empty")
    if len(indexes) == 0:
        raise EmptyCorpusError("no summaries indexed")
    cfg.validate()
    k = k or cfg.questions_to_select
    request_defaults = request_defaults or GenerationRequest(prompt_text="")
    template = load_template(TEMPLATE_LEGAL_QUESTIONS)

    base_prompt = render_prompt(template, {"context": "", "question": fact.text})
    budget = (request_defaults.max_input_tokens - estimate_tokens(base_prompt)
              - cfg.context_reserve_tokens)
    hits = indexes.query(fact.text, cfg.fusion)
    context, _included = assemble_context(hits, indexes.renders, budget)
    prompt = render_prompt(template, {"context": context, "question": fact.text})

    parsed, _result = generate_parsed(
        gw, _with_prompt(request_defaults, prompt), parse_question_list)
    if parsed is None:
        raise SafetyBlockedQueryError(f"question generation safety-blocked for {fact.id}")
    return [LegalQuestion(text=question, relevance_rank=i + 1, selected=True)
            for i, question in enumerate(parsed[:k])]


def _with_prompt(defaults: GenerationRequest, prompt: str) -> GenerationRequest:
    return replace(defaults, prompt_text=prompt)


@dataclass(frozen=True)
class RetrievalOutcome:
    ranked_cases: tuple[RankedCase, ...]
    included_doc_ids: tuple[str, ...]
    warnings: tuple[str, ...]
    augmented_query: str
    context_text: str


def retrieve_cases(fact: FactScenario, questions: list[LegalQuestion], cfg: AqgrConfig,
                   indexes: SearchIndexes, gw: LlmGateway,
                   summaries: dict[str, StructuredSummary],
                   request_defaults: GenerationRequest | None = None) -> RetrievalOutcome:
    """Ensemble retrieval plus LLM ranking for the fact + selected questions."""
    selected = [q for q in questions if q.selected]
    if not selected:
        raise AqgrError("at least one selected question is required")
    if len(indexes) == 0:
        raise EmptyCorpusError("no summaries indexed")
    cfg.validate()
    request_defaults = request_defaults or GenerationRequest(prompt_text="")
    template = load_template(TEMPLATE_RANK_CASES)

    augmented = fact.text + "\n" + "\n".join(q.text for q in selected)
    base_prompt = render_prompt(template, {"context": "", "question": augmented})
    budget = (request_defaults.max_input_tokens - estimate_tokens(base_prompt)
              - cfg.context_reserve_tokens)
    if budget <= 0:
        raise AqgrError("fact and questions leave no token budget for context")
    hits = indexes.query(augmented, cfg.fusion)
    context, included = assemble_context(hits, indexes.renders, budget)
    prompt = render_prompt(template, {"context": context, "question": augmented})

    parsed, _result = generate_parsed(
        gw, _with_prompt(request_defaults, prompt), parse_ranked_cases)
    if parsed is None:
        raise SafetyBlockedQueryError(f"case retrieval safety-blocked for {fact.id}")

    warnings: list[str] = []
    context_normalized = normalize_case_ref(context)
    party_index: dict[str, str] = {}
    for doc_id in included:
        summary = summaries.get(doc_id)
        if summary is None:
            continue
        party_index[doc_id] = normalize_case_ref(" ".join(p.name for p in summary.parties))

    def in_context(ref: str) -> bool:
        # role labels interleave party names in rendered text, so check the
        # role-free party strings of included docs as well as the raw context
        return ref in context_normalized or any(ref in h for h in party_index.values())

    ranked: list[RankedCase] = []
    for case in parsed:
        ref_normalized = normalize_case_ref(case["case_ref"])
        if not ref_normalized or not in_context(ref_normalized):
            warnings.append(f"dropped case absent from supplied context: {case['case_ref']}")
            continue
        score = case["score"]
        if score is None:
            warnings.append(f"unparseable relevance score for {case['case_ref']}; defaulted to 1")
            score = 1
        score = min(10, max(1, score))
        matches = [doc_id for doc_id, parties in party_index.items()
                   if parties and ref_normalized in parties]
        resolved = matches[0] if len(matches) == 1 else None
        if len(matches) > 1:
            warnings.append(f"ambiguous case reference left unresolved: {case['case_ref']}")
        ranked.append(RankedCase(case_ref=case["case_ref"], relevance_score=score,
                                 explanation=case["explanation"],
                                 matched_issues=tuple(case["matched_issues"]),
                                 resolved_doc_id=resolved))

    ranked.sort(key=lambda c: -c.relevance_score)
    return RetrievalOutcome(ranked_cases=tuple(ranked), included_doc_ids=tuple(included),
                            warnings=tuple(warnings), augmented_query=augmented,
                            context_text=context)
