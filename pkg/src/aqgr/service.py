"""HTTP API binding the corpus, summarizer, retrieval pipeline, and
evaluation harness together for the interactive question-selection loop.

Long-running work (summarize, index build) runs as polled jobs on a
bounded worker pool. The serving index pair is swapped atomically under a
lock on build success, so queries issued during a build always hit the
previous sealed generation. Safety blocks surface as 422 with the reason
in the body, and every 422 is appended to the audit log.
"""

import json
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import AppConfig
from .corpus import Judgment, JudgmentStore, SummaryStore, summary_to_dict
from .errors import (AqgrError, NotFoundError, ProviderError, SafetyBlockedError)
from .evaluation import load_qrels, load_queries, run_aqgr_eval, run_baseline
from .pipeline import (FactScenario, LegalQuestion, SearchIndexes,
                       generate_questions, retrieve_cases)
from .summarizer import summarize as run_summarize


@dataclass
class Session:
    session_id: str
    fact: FactScenario
    questions: list[LegalQuestion]
    last_result: dict | None = None
    created_at: float = field(default_factory=time.time)


class JudgmentBody(BaseModel):
    id: str
    text: str


class IndexBuildBody(BaseModel):
    withPrecedents: bool = True
    compact: bool = False


class SessionBody(BaseModel):
    factText: str
    factId: str | None = None


class QuestionSelectionBody(BaseModel):
    selectedRanks: list[int]


class EvalBody(BaseModel):
    queriesPath: str | None = None
    queries: list[dict] | None = None
    qrelsPath: str | None = None
    qrels: dict[str, list[str]] | None = None
    options: dict = {}


class ApiError(Exception):
    def __init__(self, status: int, detail: str, kind: str = "error"):
        self.status = status
        self.detail = detail
        self.kind = kind


class ServiceState:
    def __init__(self, cfg: AppConfig, provider=None, embedder=None):
        cfg.validate()
        self.cfg = cfg
        self.gateway = cfg.make_gateway(provider)
        self.embedder = embedder or cfg.make_embedder()
        self.judgments = JudgmentStore(cfg.judgments_dir())
        self.summaries = SummaryStore(cfg.summaries_dir())
        self.indexes: SearchIndexes | None = None
        self._swap_lock = threading.Lock()
        self.jobs: dict[str, dict] = {}
        self._jobs_lock = threading.Lock()
        self.executor = ThreadPoolExecutor(max_workers=cfg.server.job_workers)
        self.sessions: dict[str, Session] = {}
        self.audit_path = cfg.corpus_dir / "safety_audit.jsonl"

    # -- jobs ---------------------------------------------------------------

    def submit_job(self, kind: str, fn) -> str:
        job_id = uuid.uuid4().hex
        with self._jobs_lock:
            self.jobs[job_id] = {"jobId": job_id, "kind": kind, "status": "queued",
                                 "result": None, "error": None}

        def run():
            with self._jobs_lock:
                self.jobs[job_id]["status"] = "running"
            try:
                result = fn()
            except Exception as exc:  # job errors surface via polling, not a crash
                with self._jobs_lock:
                    self.jobs[job_id]["status"] = "error"
                    self.jobs[job_id]["error"] = {
                        "kind": "safety_blocked" if isinstance(exc, SafetyBlockedError)
                        else type(exc).__name__,
                        "detail": str(exc),
                    }
            else:
                with self._jobs_lock:
                    self.jobs[job_id]["status"] = "done"
                    self.jobs[job_id]["result"] = result

        self.executor.submit(run)
        return job_id

    # -- index generations ---------------------------------------------------

    def swap_indexes(self, indexes: SearchIndexes) -> None:
        with self._swap_lock:
            self.indexes = indexes

    def current_indexes(self) -> SearchIndexes:
        indexes = self.indexes
        if indexes is None:
            raise ApiError(409, "index not built yet", kind="index-not-built")
        return indexes

    def load_summaries(self) -> dict:
        out = {}
        for doc_id in self.summaries.list():
            out[doc_id] = self.summaries.get(doc_id)
        return out

    # -- sessions -------------------------------------------------------------

    def get_session(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        ttl = self.cfg.server.session_ttl_seconds
        if session is not None and time.time() - session.created_at > ttl:
            del self.sessions[session_id]
            session = None
        if session is None:
            raise ApiError(404, f"no session {session_id}")
        return session

    def audit(self, kind: str, detail: str) -> None:
        record = {"ts": time.time(), "kind": kind, "detail": detail}
        with open(self.audit_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")


def _questions_payload(questions: list[LegalQuestion]) -> list[dict]:
    return [{"text": q.text, "relevanceRank": q.relevance_rank, "selected": q.selected}
            for q in questions]


def create_app(cfg: AppConfig, provider=None, embedder=None) -> FastAPI:
    state = ServiceState(cfg, provider=provider, embedder=embedder)
    app = FastAPI(title="aqgr", version="0.1.0")
    app.state.service = state

    if cfg.server.cors_origins:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=list(cfg.server.cors_origins),
                           allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        if exc.status == 422:
            state.audit(exc.kind, exc.detail)
        return JSONResponse(status_code=exc.status,
                            content={"error": exc.kind, "detail": exc.detail})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "validation", "detail": str(exc.errors()[:3])})

    @app.exception_handler(ProviderError)
    async def _provider_error(_req: Request, exc: ProviderError):
        return JSONResponse(status_code=503,
                            content={"error": "provider-unavailable", "detail": str(exc)})

    @app.exception_handler(AqgrError)
    async def _domain_error(_req: Request, exc: AqgrError):
        return JSONResponse(status_code=400,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    # -- corpus -----------------------------------------------------------

    @app.post("/api/judgments", status_code=201)
    def post_judgment(body: JudgmentBody):
        try:
            existing = state.judgments.get(body.id)
        except (NotFoundError, AqgrError):
            existing = None
        if existing is not None:
            if existing.text == body.text:
                return JSONResponse(status_code=200,
                                    content={"id": body.id, "status": "unchanged"})
            raise ApiError(409, f"judgment {body.id} already exists with different text")
        judgment = Judgment.from_text(body.id, body.text)
        state.judgments.put(judgment)
        return {"id": judgment.id, "charCount": judgment.char_count,
                "wordCount": judgment.word_count}

    @app.post("/api/judgments/{doc_id}/summarize", status_code=202)
    def post_summarize(doc_id: str):
        try:
            judgment = state.judgments.get(doc_id)
        except NotFoundError as exc:
            raise ApiError(404, str(exc))

        def job():
            summary = run_summarize(judgment, state.cfg.summarize, state.gateway,
                                    state.embedder,
                                    request_defaults=state.cfg.request_defaults())
            state.summaries.put(summary)
            return summary_to_dict(summary)

        return {"jobId": state.submit_job("summarize", job)}

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        with state._jobs_lock:
            job = state.jobs.get(job_id)
            if job is None:
                raise ApiError(404, f"no job {job_id}")
            return dict(job)

    @app.get("/api/summaries/{doc_id}")
    def get_summary(doc_id: str):
        try:
            return summary_to_dict(state.summaries.get(doc_id))
        except (NotFoundError, AqgrError) as exc:
            raise ApiError(404, str(exc))

    # -- index ------------------------------------------------------------

    @app.post("/api/index/build", status_code=202)
    def post_index_build(body: IndexBuildBody):
        from .corpus import SummaryRenderOptions

        def job():
            summaries = state.load_summaries()
            if not summaries:
                raise AqgrError("no summaries in store; summarize first")
            opts = SummaryRenderOptions(include_precedents=body.withPrecedents,
                                        compact=body.compact)
            indexes = SearchIndexes.build(summaries, opts, state.embedder,
                                          k1=state.cfg.bm25.k1, b=state.cfg.bm25.b)
            indexes.save(state.cfg.index_dir)
            state.swap_indexes(indexes)
            return {"docCount": len(indexes), "withPrecedents": body.withPrecedents,
                    "compact": body.compact}

        return {"jobId": state.submit_job("index-build", job)}

    # -- sessions -----------------------------------------------------------

    @app.post("/api/sessions", status_code=201)
    def post_session(body: SessionBody):
        if not body.factText.strip():
            raise ApiError(400, "factText must be non-empty")
        indexes = state.current_indexes()
        fact = FactScenario(id=body.factId or f"fact-{uuid.uuid4().hex[:8]}",
                            text=body.factText)
        try:
            questions = generate_questions(fact, state.gateway, indexes, state.cfg.aqgr,
                                           request_defaults=state.cfg.request_defaults())
        except SafetyBlockedError as exc:
            raise ApiError(422, str(exc), kind="safety-blocked")
        session = Session(session_id=uuid.uuid4().hex, fact=fact, questions=questions)
        state.sessions[session.session_id] = session
        return {"sessionId": session.session_id,
                "questions": _questions_payload(session.questions)}

    @app.patch("/api/sessions/{session_id}/questions")
    def patch_questions(session_id: str, body: QuestionSelectionBody):
        session = state.get_session(session_id)
        known = {q.relevance_rank for q in session.questions}
        unknown = [r for r in body.selectedRanks if r not in known]
        if unknown:
            raise ApiError(400, f"unknown question ranks: {unknown}")
        chosen = set(body.selectedRanks)
        for question in session.questions:
            question.selected = question.relevance_rank in chosen
        return {"questions": _questions_payload(session.questions)}

    @app.post("/api/sessions/{session_id}/retrieve")
    def post_retrieve(session_id: str):
        session = state.get_session(session_id)
        if not any(q.selected for q in session.questions):
            raise ApiError(400, "no questions selected")
        indexes = state.current_indexes()
        try:
            outcome = retrieve_cases(session.fact, session.questions, state.cfg.aqgr,
                                     indexes, state.gateway, state.load_summaries(),
                                     request_defaults=state.cfg.request_defaults())
        except SafetyBlockedError as exc:
            raise ApiError(422, str(exc), kind="safety-blocked")
        payload = {
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
        session.last_result = payload
        return payload

    # -- evaluation -----------------------------------------------------------

    @app.post("/api/eval")
    def post_eval(body: EvalBody):
        if body.queries is not None:
            queries = [FactScenario(id=str(q["id"]), text=str(q["text"]))
                       for q in body.queries]
        elif body.queriesPath:
            queries = load_queries(body.queriesPath)
        else:
            raise ApiError(400, "queries or queriesPath required")
        if body.qrels is not None:
            qrels = {qid: set(docs) for qid, docs in body.qrels.items()}
            warnings: list[str] = []
        elif body.qrelsPath:
            qrels, warnings = load_qrels(body.qrelsPath,
                                         known_doc_ids=set(state.summaries.list()))
        else:
            raise ApiError(400, "qrels or qrelsPath required")

        options = body.options or {}
        if options.get("baseline"):
            texts = {doc_id: state.judgments.get(doc_id).text
                     for doc_id in state.judgments.list()}
            report = run_baseline(queries, texts, qrels,
                                  k=int(options.get("k", 10)),
                                  k1=state.cfg.bm25.k1, b=state.cfg.bm25.b)
        else:
            from .corpus import SummaryRenderOptions
            from dataclasses import replace as dc_replace
            opts = SummaryRenderOptions(
                include_precedents=bool(options.get("withPrecedents", True)),
                compact=bool(options.get("compact", False)))
            summaries = state.load_summaries()
            if not summaries:
                raise AqgrError("no summaries in store; summarize first")
            indexes = SearchIndexes.build(summaries, opts, state.embedder,
                                          k1=state.cfg.bm25.k1, b=state.cfg.bm25.b)
            cfg = dc_replace(state.cfg.aqgr, render_opts=opts)
            report = run_aqgr_eval(queries, qrels, indexes, state.gateway, cfg,
                                   summaries, request_defaults=state.cfg.request_defaults())
        payload = report.to_dict()
        payload["warnings"] = list(warnings) + payload.get("warnings", [])
        return payload

    if cfg.server.static_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=cfg.server.static_dir, html=True), name="ui")

    return app
