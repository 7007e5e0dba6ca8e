"""Command-line interface.

Subcommands map 1:1 onto the module operations: ingest judgments, run
summarization, build the search indexes, answer a factual query, run the
evaluation harness, and serve the HTTP API. Output goes to stdout as JSON
(compact by default, indented with --pretty). Exit codes: 0 success,
1 usage error, 2 runtime error, 3 provider error.
"""

import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from .config import AppConfig, load_config
from .corpus import (Judgment, JudgmentStore, SummaryRenderOptions, SummaryStore)
from .errors import AqgrError, ParseError, ProviderError, SafetyBlockedError
from .evaluation import (QueryScore, aggregate, load_qrels, load_queries,
                         report_markdown, run_aqgr_eval, run_baseline)
from .pipeline import FactScenario, SearchIndexes, generate_questions, retrieve_cases
from .summarizer import summarize_with_info

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_PROVIDER = 3


def _emit(payload: dict, pretty: bool) -> None:
    if pretty:
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        click.echo(json.dumps(payload, ensure_ascii=False))


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Path to the YAML config file.")
@click.pass_context
def cli(ctx, config_path):
    ctx.obj = load_config(config_path)


@cli.command()
@click.option("--in", "source_dir", required=True,
              type=click.Path(exists=True, file_okay=False), help="Directory of .txt judgments.")
@click.option("--pretty", is_flag=True)
@click.pass_obj
def ingest(cfg: AppConfig, source_dir, pretty):
    """Copy plain-text judgments into the corpus store."""
    store = JudgmentStore(cfg.judgments_dir())
    ingested, unchanged = [], []
    for path in sorted(Path(source_dir).glob("*.txt")):
        judgment = Judgment.from_text(path.stem, path.read_text(encoding="utf-8"))
        target = store.path_for(judgment.id)
        if target.exists() and target.read_text(encoding="utf-8") == judgment.text:
            unchanged.append(judgment.id)
            continue
        store.put(judgment)
        ingested.append(judgment.id)
    _emit({"ingested": ingested, "unchanged": unchanged}, pretty)


@cli.command()
@click.option("--in", "source_dir", type=click.Path(exists=True, file_okay=False), default=None,
              help="Judgments directory (defaults to the corpus store).")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Summaries directory (defaults to the corpus store).")
@click.option("--mode", type=click.Choice(["auto", "single", "cot"]), default=None)
@click.option("--skip-existing", is_flag=True)
@click.option("--pretty", is_flag=True)
@click.pass_obj
def summarize(cfg: AppConfig, source_dir, out_dir, mode, skip_existing, pretty):
    """Generate structured summaries for every stored judgment."""
    judgments = JudgmentStore(source_dir or cfg.judgments_dir())
    summaries = SummaryStore(out_dir or cfg.summaries_dir())
    gw = cfg.make_gateway()
    embedder = cfg.make_embedder()
    summarize_cfg = cfg.summarize if mode is None else replace(cfg.summarize, mode=mode)
    skipped_log = summaries.root / "_skipped.jsonl"

    done, skipped = [], []
    for doc_id in judgments.list():
        if skip_existing and summaries.path_for(doc_id).exists():
            continue
        try:
            summary, info = summarize_with_info(judgments.get(doc_id), summarize_cfg, gw,
                                                embedder,
                                                request_defaults=cfg.request_defaults())
        except SafetyBlockedError as exc:
            skipped.append({"id": doc_id, "reason": "safety_blocked", "detail": str(exc)})
            with open(skipped_log, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(skipped[-1]) + "\n")
            continue
        summaries.put(summary)
        done.append({"id": doc_id, "mode": info.mode, "generateCalls": info.generate_calls})
    _emit({"summarized": done, "skipped": skipped}, pretty)


@cli.command()
@click.option("--with-precedents/--no-precedents", "with_precedents", default=True)
@click.option("--compact", is_flag=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
@click.option("--pretty", is_flag=True)
@click.pass_obj
def index(cfg: AppConfig, with_precedents, compact, out_dir, pretty):
    """Build and persist the sparse + dense indexes over stored summaries."""
    store = SummaryStore(cfg.summaries_dir())
    summaries = {doc_id: store.get(doc_id) for doc_id in store.list()}
    if not summaries:
        raise AqgrError("no summaries in store; run summarize first")
    opts = SummaryRenderOptions(include_precedents=with_precedents, compact=compact)
    indexes = SearchIndexes.build(summaries, opts, cfg.make_embedder(),
                                  k1=cfg.bm25.k1, b=cfg.bm25.b)
    target = Path(out_dir) if out_dir else cfg.index_dir
    indexes.save(target)
    _emit({"docCount": len(indexes), "indexDir": str(target),
           "withPrecedents": with_precedents, "compact": compact}, pretty)


def _load_indexes(cfg: AppConfig, embedder) -> tuple[SearchIndexes, dict]:
    store = SummaryStore(cfg.summaries_dir())
    summaries = {doc_id: store.get(doc_id) for doc_id in store.list()}
    meta_path = cfg.index_dir / "meta.json"
    if not meta_path.exists():
        raise AqgrError(f"no index at {cfg.index_dir}; run `aqgr index` first")
    return SearchIndexes.load(cfg.index_dir, summaries, embedder), summaries


@cli.command()
@click.option("--fact", "fact_src", required=True,
              help="Path to the factual scenario file, or '-' for stdin.")
@click.option("--questions", "question_mode", type=click.Choice(["auto", "interactive"]),
              default="auto")
@click.option("--k-questions", type=int, default=None)
@click.option("--with-precedents/--no-precedents", "with_precedents", default=None)
@click.option("--compact/--no-compact", default=None)
@click.option("--json", "json_flag", is_flag=True, help="Compact JSON output (default).")
@click.option("--pretty", is_flag=True)
@click.pass_obj
def query(cfg: AppConfig, fact_src, question_mode, k_questions, with_precedents,
          compact, json_flag, pretty):
    """Run question-guided retrieval for one factual scenario."""
    if fact_src == "-":
        fact_text = click.get_text_stream("stdin").read()
        query_id = "stdin"
    else:
        fact_path = Path(fact_src)
        if not fact_path.exists():
            raise click.UsageError(f"no such fact file: {fact_src}")
        fact_text = fact_path.read_text(encoding="utf-8")
        query_id = fact_path.stem
    fact = FactScenario(id=query_id, text=fact_text.strip())

    embedder = cfg.make_embedder()
    indexes, summaries = _load_indexes(cfg, embedder)
    if with_precedents is not None and indexes.render_opts.include_precedents != with_precedents:
        raise AqgrError("index was built with different precedent settings; rebuild it")
    if compact is not None and indexes.render_opts.compact != compact:
        raise AqgrError("index was built with different compact settings; rebuild it")

    aqgr_cfg = replace(cfg.aqgr, render_opts=indexes.render_opts)
    if k_questions:
        aqgr_cfg = replace(aqgr_cfg, questions_to_select=k_questions)
    gw = cfg.make_gateway()
    questions = generate_questions(fact, gw, indexes, aqgr_cfg,
                                   request_defaults=cfg.request_defaults())

    if question_mode == "interactive":
        for q in questions:
            click.echo(f"{q.relevance_rank}. {q.text}", err=True)
        raw = click.prompt("Select question ranks (comma-separated)", default="", err=True)
        if raw.strip():
            chosen = {int(part) for part in raw.replace(",", " ").split()}
            for q in questions:
                q.selected = q.relevance_rank in chosen

    outcome = retrieve_cases(fact, questions, aqgr_cfg, indexes, gw, summaries,
                             request_defaults=cfg.request_defaults())
    payload = {
        "queryId": fact.id,
        "questions": [{"text": q.text, "relevanceRank": q.relevance_rank,
                       "selected": q.selected} for q in questions],
        "rankedCases": [{"caseRef": c.case_ref, "docId": c.resolved_doc_id,
                         "score": c.relevance_score, "explanation": c.explanation,
                         "matchedIssues": list(c.matched_issues)}
                        for c in outcome.ranked_cases],
        "includedDocIds": list(outcome.included_doc_ids),
        "warnings": list(outcome.warnings),
    }
    _emit(payload, pretty)


@cli.command("eval")
@click.option("--queries", "queries_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--qrels", "qrels_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--with-precedents/--no-precedents", "with_precedents", default=True)
@click.option("--compact", is_flag=True)
@click.option("--baseline", is_flag=True)
@click.option("--baseline-k", type=int, default=10)
@click.option("--scores", "scores_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Aggregate a frozen per-query score table instead of running.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--pretty", is_flag=True)
@click.pass_obj
def eval_cmd(cfg: AppConfig, queries_path, qrels_path, with_precedents, compact,
             baseline, baseline_k, scores_path, out_path, pretty):
    """Evaluate retrieval against qrels, or aggregate a frozen score table."""
    qrels = None
    warnings: list[str] = []
    if scores_path:
        rows = json.loads(Path(scores_path).read_text(encoding="utf-8"))
        per_query = {qid: QueryScore(precision=float(pr[0]), recall=float(pr[1]))
                     for qid, pr in rows.items()}
        report = aggregate(per_query)
    else:
        if not queries_path or not qrels_path:
            raise click.UsageError("--queries and --qrels are required without --scores")
        store = SummaryStore(cfg.summaries_dir())
        qrels, warnings = load_qrels(qrels_path, known_doc_ids=set(store.list()))
        queries = load_queries(queries_path)
        if baseline:
            judgments = JudgmentStore(cfg.judgments_dir())
            texts = {doc_id: judgments.get(doc_id).text for doc_id in judgments.list()}
            report = run_baseline(queries, texts, qrels, k=baseline_k,
                                  k1=cfg.bm25.k1, b=cfg.bm25.b)
        else:
            embedder = cfg.make_embedder()
            summaries = {doc_id: store.get(doc_id) for doc_id in store.list()}
            if not summaries:
                raise AqgrError("no summaries in store; run summarize first")
            opts = SummaryRenderOptions(include_precedents=with_precedents, compact=compact)
            indexes = SearchIndexes.build(summaries, opts, embedder,
                                          k1=cfg.bm25.k1, b=cfg.bm25.b)
            aqgr_cfg = replace(cfg.aqgr, render_opts=opts)
            report = run_aqgr_eval(queries, qrels, indexes, cfg.make_gateway(), aqgr_cfg,
                                   summaries, request_defaults=cfg.request_defaults())

    payload = report.to_dict()
    payload["loadWarnings"] = warnings
    if out_path:
        out = Path(out_path)
        out.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n",
                       encoding="utf-8")
        out.with_suffix(".md").write_text(report_markdown(report, qrels), encoding="utf-8")
    _emit({"map": report.map, "mar": report.mar, "mapRanked": report.map_ranked,
           "scored": len(report.per_query),
           "excluded": [{"queryId": q, "reason": r} for q, r in report.excluded],
           "out": out_path}, pretty)


@cli.command()
@click.pass_obj
def serve(cfg: AppConfig):
    """Run the HTTP API server."""
    import uvicorn

    from .service import create_app

    host, port = cfg.server.host_port()
    uvicorn.run(create_app(cfg), host=host, port=port)


def main() -> int:
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        click.echo(cli.get_help(click.Context(cli)), err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except ProviderError as exc:
        click.echo(f"provider error: {exc}", err=True)
        return EXIT_PROVIDER
    except (AqgrError, ParseError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
