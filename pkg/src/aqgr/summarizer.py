"""Structured-summary generation for one judgment via per-document RAG.

The document is chunked, embedded into an ephemeral in-memory vector
store, and the top-k chunks for the extraction query are stuffed into the
prompt. Documents over the long-document threshold switch to a multi-step
plan of simple queries (one field group per step) whose outputs are
merged; a merged field is never overwritten by an empty value.
"""

from dataclasses import dataclass, field, replace

from .chunker import Chunk, ChunkConfig, estimate_tokens, split
from .corpus import PARENT_FIELDS, Judgment, StructuredSummary, validate_summary
from .embed import DenseIndex
from .errors import AqgrError, InvalidConfigError, SafetyBlockedDocError
from .gateway import (TEMPLATE_SUMMARY, GenerationRequest, LlmGateway, PromptTemplate,
                      extract_json, generate_parsed, load_prompt_text, load_template,
                      render_prompt)

MODE_SINGLE = "single"
MODE_COT = "cot"
MODE_AUTO = "auto"

DEFAULT_RETRIEVE_K = 4
DEFAULT_LONG_DOC_THRESHOLD = 122_880

SUMMARY_QUERY = load_prompt_text("summary_query")

_QUERY_PREFIX = "Summarize the given judgment by extracting contents such as "
_QUERY_SUFFIX = " Create structured output in JSON format."

_COT_STEPS: tuple[tuple[tuple[str, ...], str], ...] = (
    (("court", "case_no", "kind_of_judgment", "parties", "date", "bench_of_judges",
      "source_judgment_id"),
     _QUERY_PREFIX + "Court: Case No: Kind of Judgment(Appeal/Petition): Parties: "
     "Date: Bench of Judges:" + _QUERY_SUFFIX),
    (("facts", "arguments"),
     _QUERY_PREFIX + "Facts: Arguments:" + _QUERY_SUFFIX),
    (("issues_or_questions", "reasoning", "disposed_in_favour_of", "final_judgment"),
     _QUERY_PREFIX + "Issues or Questions: Reasoning of the Questions: "
     "Case disposed of in favour of: Final Judgment:" + _QUERY_SUFFIX),
    (("statutes_referred", "precedents_referred", "new_legal_principles",
      "important_subjects"),
     _QUERY_PREFIX + "Statutes Referred:{ Name: Principle: Application:} "
     "Precedents Referred:{ Name: Principle: Application:} "
     "New legal principle that can be applied to future cases:{ Principle: Application:} "
     "Important Subjects Discussed:" + _QUERY_SUFFIX),
)


@dataclass(frozen=True)
class CoTStep:
    field_group: tuple[str, ...]
    query_text: str


@dataclass(frozen=True)
class CoTPlan:
    steps: tuple[CoTStep, ...]


@dataclass(frozen=True)
class SummarizeConfig:
    chunk_cfg: ChunkConfig = field(default_factory=ChunkConfig)
    retrieve_k: int = DEFAULT_RETRIEVE_K
    long_doc_threshold_chars: int = DEFAULT_LONG_DOC_THRESHOLD
    mode: str = MODE_AUTO

    def validate(self, max_input_tokens: int) -> None:
        if self.retrieve_k < 1:
            raise InvalidConfigError(f"retrieve_k must be >= 1, got {self.retrieve_k}")
        if self.mode not in (MODE_SINGLE, MODE_COT, MODE_AUTO):
            raise InvalidConfigError(f"unknown summarize mode: {self.mode}")
        self.chunk_cfg.validate()
        overhead = estimate_tokens(SUMMARY_QUERY) + 16
        budget = self.retrieve_k * self.chunk_cfg.chunk_size // 4 + overhead
        if budget > max_input_tokens:
            raise InvalidConfigError(
                f"retrieve_k={self.retrieve_k} chunks of {self.chunk_cfg.chunk_size} chars "
                f"estimate {budget} tokens, over the {max_input_tokens} input limit")


@dataclass(frozen=True)
class SummarizeInfo:
    mode: str
    generate_calls: int
    field_provenance: dict[str, int]
    chunk_count: int


def plan_cot(doc: Judgment) -> CoTPlan:
    """Four simple-query steps that together cover every parent field."""
    return CoTPlan(steps=tuple(CoTStep(group, query) for group, query in _COT_STEPS))


def _is_empty(value) -> bool:
    return value == "" or value == ()


def _retrieve_chunk_context(index: DenseIndex, chunks: list[Chunk], embedder,
                            query_text: str, retrieve_k: int) -> list[Chunk]:
    query_vec = embedder.embed([query_text])[0]
    hits = index.search(query_vec, retrieve_k)
    by_key = {DenseIndex.hit_key(c.doc_id, c.seq): c for c in chunks}
    return [by_key[h.doc_key] for h in hits]


def _generate_step(gw: LlmGateway, template: PromptTemplate, picked: list[Chunk],
                   query_text: str, request_defaults: GenerationRequest):
    """Build the prompt, trimming lowest-ranked chunks until it fits the budget."""
    selection = list(picked)
    while True:
        ordered = sorted(selection, key=lambda c: c.seq)
        context = "\n\n".join(c.text for c in ordered)
        prompt = render_prompt(template, {"context": context, "question": query_text})
        if estimate_tokens(prompt) <= request_defaults.max_input_tokens or not selection:
            break
        selection.pop()
    request = replace(request_defaults, prompt_text=prompt)
    return generate_parsed(gw, request, extract_json)


def resolve_mode(mode: str, char_count: int, threshold: int) -> str:
    if mode != MODE_AUTO:
        return mode
    return MODE_SINGLE if char_count <= threshold else MODE_COT


def summarize_with_info(doc: Judgment, cfg: SummarizeConfig, gw: LlmGateway, embedder,
                        request_defaults: GenerationRequest | None = None
                        ) -> tuple[StructuredSummary, SummarizeInfo]:
    """Full pipeline for one judgment; raises SafetyBlockedDocError on a block."""
    if not doc.text:
        raise AqgrError(f"judgment {doc.id} is empty")
    request_defaults = request_defaults or GenerationRequest(prompt_text="")
    cfg.validate(request_defaults.max_input_tokens)

    mode = resolve_mode(cfg.mode, doc.char_count, cfg.long_doc_threshold_chars)
    chunks = split(doc.id, doc.text, cfg.chunk_cfg)
    index = DenseIndex(embedder.dim)
    for chunk, vec in zip(chunks, embedder.embed([c.text for c in chunks])):
        index.add(chunk.doc_id, chunk.seq, vec)
    index.seal()
    template = load_template(TEMPLATE_SUMMARY)

    calls = 0
    if mode == MODE_SINGLE:
        picked = _retrieve_chunk_context(index, chunks, embedder, SUMMARY_QUERY, cfg.retrieve_k)
        parsed, _result = _generate_step(gw, template, picked, SUMMARY_QUERY, request_defaults)
        calls += 1
        if parsed is None:
            raise SafetyBlockedDocError(f"summary generation safety-blocked for {doc.id}")
        summary, _warnings = validate_summary(parsed)
        provenance = {name: 0 for name in PARENT_FIELDS
                      if not _is_empty(getattr(summary, name))}
    else:
        plan = plan_cot(doc)
        merged: dict[str, object] = {}
        provenance = {}
        for step_idx, step in enumerate(plan.steps):
            picked = _retrieve_chunk_context(index, chunks, embedder, step.query_text,
                                             cfg.retrieve_k)
            parsed, _result = _generate_step(gw, template, picked, step.query_text,
                                             request_defaults)
            calls += 1
            if parsed is None:
                raise SafetyBlockedDocError(
                    f"summary step {step_idx + 1} safety-blocked for {doc.id}")
            partial, _warnings = validate_summary(parsed)
            for name in step.field_group:
                if name == "source_judgment_id":
                    continue
                value = getattr(partial, name)
                if not _is_empty(value) and _is_empty(merged.get(name, "")):
                    merged[name] = value
                    provenance[name] = step_idx
        summary = StructuredSummary(**merged)

    summary = replace(summary, source_judgment_id=doc.id)
    provenance["source_judgment_id"] = calls - 1
    info = SummarizeInfo(mode=mode, generate_calls=calls, field_provenance=provenance,
                         chunk_count=len(chunks))
    return summary, info


def summarize(doc: Judgment, cfg: SummarizeConfig, gw: LlmGateway, embedder,
              request_defaults: GenerationRequest | None = None) -> StructuredSummary:
    summary, _info = summarize_with_info(doc, cfg, gw, embedder, request_defaults)
    return summary
