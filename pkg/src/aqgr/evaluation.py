"""Offline evaluation: qrels/query loaders, set-based precision/recall,
MAP/MAR aggregation with safety-exclusion bookkeeping, and a BM25
text-similarity baseline over full judgments.

Per-query precision is computed over the retrieved SET (duplicates
collapsed, ranking ignored) because the ground truth carries no ranking.
A standard rank-weighted average precision is also reported as a clearly
separate secondary column for comparability.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import (AllExcludedError, EmptyRelevantSetError, ParseError,
                     SafetyBlockedError)
from .gateway import GenerationRequest, LlmGateway
from .pipeline import (AqgrConfig, FactScenario, SearchIndexes, generate_questions,
                       normalize_case_ref, retrieve_cases)
from .sparse import SparseIndex

DEFAULT_BASELINE_K = 10


@dataclass(frozen=True)
class QueryScore:
    precision: float
    recall: float
    retrieved: tuple[str, ...] = ()
    relevant_hit: tuple[str, ...] = ()
    ap_ranked: float | None = None


@dataclass(frozen=True)
class EvalReport:
    per_query: dict[str, QueryScore]
    map: float
    mar: float
    map_ranked: float | None
    excluded: tuple[tuple[str, str], ...] = ()
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "per_query": {
                qid: {
                    "precision": qs.precision,
                    "recall": qs.recall,
                    "retrieved": list(qs.retrieved),
                    "relevant_hit": list(qs.relevant_hit),
                    "ap_ranked": qs.ap_ranked,
                }
                for qid, qs in self.per_query.items()
            },
            "map": self.map,
            "mar": self.mar,
            "map_ranked": self.map_ranked,
            "excluded": [{"query_id": qid, "reason": reason} for qid, reason in self.excluded],
            "warnings": list(self.warnings),
        }


def score_query(retrieved_doc_ids, relevant_doc_ids) -> tuple[float, float]:
    """Set-based precision and recall for one query.

    Duplicates in the retrieved list are collapsed first; order never
    matters. Precision is 0 when nothing was retrieved.
    """
    relevant = set(relevant_doc_ids)
    if not relevant:
        raise EmptyRelevantSetError("relevant set must be non-empty")
    retrieved = set(retrieved_doc_ids)
    if not retrieved:
        return 0.0, 0.0
    hit = len(retrieved & relevant)
    return hit / len(retrieved), hit / len(relevant)


def ranked_ap(retrieved_in_order, relevant_doc_ids) -> float:
    """Standard rank-weighted average precision (secondary metric only)."""
    relevant = set(relevant_doc_ids)
    if not relevant:
        raise EmptyRelevantSetError("relevant set must be non-empty")
    seen: set[str] = set()
    hits = 0
    total = 0.0
    position = 0
    for doc_id in retrieved_in_order:
        if doc_id in seen:
            continue
        seen.add(doc_id)
        position += 1
        if doc_id in relevant:
            hits += 1
            total += hits / position
    return total / len(relevant)


def aggregate(per_query: dict[str, QueryScore | tuple[float, float]],
              excluded=()) -> EvalReport:
    """Unweighted means over the non-excluded queries (excluded contribute nothing)."""
    scores: dict[str, QueryScore] = {}
    for qid, value in per_query.items():
        scores[qid] = value if isinstance(value, QueryScore) else QueryScore(*value)
    if not scores:
        raise AllExcludedError("no queries left to aggregate")
    mean_p = sum(qs.precision for qs in scores.values()) / len(scores)
    mean_r = sum(qs.recall for qs in scores.values()) / len(scores)
    ranked = [qs.ap_ranked for qs in scores.values() if qs.ap_ranked is not None]
    map_ranked = sum(ranked) / len(ranked) if len(ranked) == len(scores) else None
    return EvalReport(per_query=scores, map=mean_p, mar=mean_r, map_ranked=map_ranked,
                      excluded=tuple(excluded))


# ---------------------------------------------------------------------------
# loaders

def load_qrels(path: str | Path, known_doc_ids=None) -> tuple[dict[str, set[str]], list[str]]:
    """TSV qrels: one "queryId<TAB>docId" per line, '#' comments allowed."""
    qrels: dict[str, set[str]] = {}
    warnings: list[str] = []
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ParseError(f"expected 'queryId<TAB>docId', got {line!r}", line=lineno)
        qid, doc_id = parts[0].strip(), parts[1].strip()
        qrels.setdefault(qid, set()).add(doc_id)
        if known_doc_ids is not None and doc_id not in known_doc_ids:
            warnings.append(f"line {lineno}: qrels references unknown doc id {doc_id}")
    if not qrels:
        warnings.append("qrels file is empty")
    return qrels, warnings


def load_queries(path: str | Path) -> list[FactScenario]:
    """JSON array of {id, text} objects."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno)
    if not isinstance(data, list):
        raise ParseError("queries file must be a JSON array")
    queries = []
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or "id" not in entry or "text" not in entry:
            raise ParseError(f"query #{i} must be an object with 'id' and 'text'")
        queries.append(FactScenario(id=str(entry["id"]), text=str(entry["text"])))
    return queries


# ---------------------------------------------------------------------------
# evaluation runs

def _score_one(qid: str, retrieved: list[str], qrels: dict[str, set[str]]) -> QueryScore:
    relevant = qrels[qid]
    deduped: list[str] = []
    for doc_id in retrieved:
        if doc_id not in deduped:
            deduped.append(doc_id)
    precision, recall = score_query(deduped, relevant)
    return QueryScore(
        precision=precision,
        recall=recall,
        retrieved=tuple(deduped),
        relevant_hit=tuple(d for d in deduped if d in relevant),
        ap_ranked=ranked_ap(deduped, relevant),
    )


def run_baseline(queries: list[FactScenario], judgment_texts: dict[str, str],
                 qrels: dict[str, set[str]], k: int = DEFAULT_BASELINE_K,
                 k1: float = 1.2, b: float = 0.75) -> EvalReport:
    """Text-similarity baseline: BM25 over full judgments, raw fact as query."""
    index = SparseIndex.build(sorted(judgment_texts.items()), k1=k1, b=b)
    per_query: dict[str, QueryScore] = {}
    excluded: list[tuple[str, str]] = []
    for query in queries:
        if query.id not in qrels:
            excluded.append((query.id, "no relevant judgments recorded"))
            continue
        hits = index.search(query.text, k)
        per_query[query.id] = _score_one(query.id, [h.doc_key for h in hits], qrels)
    return _finish(per_query, excluded)


def run_aqgr_eval(queries: list[FactScenario], qrels: dict[str, set[str]],
                  indexes: SearchIndexes, gw: LlmGateway, cfg: AqgrConfig, summaries,
                  request_defaults: GenerationRequest | None = None) -> EvalReport:
    """Full question-guided retrieval evaluated against qrels.

    Safety-blocked queries are recorded as exclusions, never silently
    dropped, and contribute nothing to the averages. Cases that could not
    be resolved to a corpus id still occupy retrieved-set slots (they were
    retrieved output), under a sentinel that can never match the truth.
    """
    per_query: dict[str, QueryScore] = {}
    excluded: list[tuple[str, str]] = []
    warnings: list[str] = []
    for query in queries:
        if query.id not in qrels:
            excluded.append((query.id, "no relevant judgments recorded"))
            continue
        try:
            questions = generate_questions(query, gw, indexes, cfg,
                                           request_defaults=request_defaults)
            outcome = retrieve_cases(query, questions, cfg, indexes, gw, summaries,
                                     request_defaults=request_defaults)
        except SafetyBlockedError:
            excluded.append((query.id, "safety_blocked"))
            continue
        retrieved = [case.resolved_doc_id
                     if case.resolved_doc_id is not None
                     else f"unresolved:{normalize_case_ref(case.case_ref)}"
                     for case in outcome.ranked_cases]
        warnings.extend(f"{query.id}: {w}" for w in outcome.warnings)
        per_query[query.id] = _score_one(query.id, retrieved, qrels)
    report = _finish(per_query, excluded)
    return EvalReport(per_query=report.per_query, map=report.map, mar=report.mar,
                      map_ranked=report.map_ranked, excluded=report.excluded,
                      warnings=tuple(warnings))


def _finish(per_query: dict[str, QueryScore], excluded: list[tuple[str, str]]) -> EvalReport:
    if not per_query:
        raise AllExcludedError(
            "every query was excluded: " + "; ".join(f"{q} ({r})" for q, r in excluded))
    return aggregate(per_query, excluded=excluded)


def report_markdown(report: EvalReport, qrels: dict[str, set[str]] | None = None) -> str:
    """Markdown table: one row per query plus the averages row."""
    lines = [
        "| Query | Relevant Judgments | Precision | Recall | Ranked AP |",
        "|---|---|---|---|---|",
    ]
    for qid in sorted(report.per_query, key=_query_sort_key):
        qs = report.per_query[qid]
        relevant = ", ".join(sorted(qrels.get(qid, set()))) if qrels else ""
        ap = f"{qs.ap_ranked:.4f}" if qs.ap_ranked is not None else "-"
        lines.append(f"| {qid} | {relevant} | {qs.precision:.4g} | {qs.recall:.4g} | {ap} |")
    ranked = f"{report.map_ranked:.4f}" if report.map_ranked is not None else "-"
    lines.append(f"| **Average** | | **{report.map:.4f}** | **{report.mar:.4f}** | {ranked} |")
    for qid, reason in report.excluded:
        lines.append(f"| {qid} | excluded: {reason} | | | |")
    return "\n".join(lines) + "\n"


def _query_sort_key(qid: str):
    digits = "".join(ch for ch in qid if ch.isdigit())
    return (0, int(digits), qid) if digits else (1, 0, qid)
