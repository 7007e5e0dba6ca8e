"""Application configuration: YAML file + environment overrides, validated
fully at startup so a bad deployment fails fast, plus factories for the
provider objects the config describes.

Environment overrides use AQGR_<SECTION>__<KEY>, e.g. AQGR_LLM__KIND=replay.
"""

import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .chunker import ChunkConfig
from .corpus import SummaryRenderOptions
from .embed import HttpEmbeddingProvider, MockEmbeddingProvider
from .errors import InvalidConfigError
from .fusion import FusionConfig
from .gateway import (GenerationRequest, HttpGenericProvider, LlmGateway, MockProvider,
                      ReplayProvider)
from .pipeline import AqgrConfig
from .summarizer import SummarizeConfig

ENV_PREFIX = "AQGR_"


@dataclass(frozen=True)
class Bm25Config:
    k1: float = 1.2
    b: float = 0.75


@dataclass(frozen=True)
class LlmProviderConfig:
    kind: str = "mock"  # mock | replay | http-generic
    url: str | None = None
    api_key_env: str = "LLM_API_KEY"
    max_input_tokens: int = 30_720
    max_output_tokens: int = 2_048
    temperature: float = 0.9
    top_p: float = 1.0
    top_k: int = 1
    fixtures_dir: str | None = None
    max_concurrent: int = 2
    max_retries: int = 3
    retry_base_delay: float = 0.5
    mock_text: str = "{}"
    request_body: dict | None = None
    response_text_path: str = "text"
    response_finish_path: str | None = None


@dataclass(frozen=True)
class EmbedProviderConfig:
    kind: str = "mock"  # mock | http-json
    url: str | None = None
    api_key_env: str = "EMBED_API_KEY"
    dim: int = 256
    seed: int = 0
    max_concurrent_embed: int = 4


@dataclass(frozen=True)
class ServerConfig:
    bind: str = "127.0.0.1:8571"
    cors_origins: tuple[str, ...] = ()
    session_ttl_seconds: int = 3600
    job_workers: int = 2
    static_dir: str | None = None

    def host_port(self) -> tuple[str, int]:
        host, _, port = self.bind.rpartition(":")
        if not host or not port.isdigit():
            raise InvalidConfigError(f"server.bind must be host:port, got {self.bind!r}")
        return host, int(port)


@dataclass(frozen=True)
class AppConfig:
    corpus_dir: Path = Path("corpus")
    index_dir: Path = Path("index")
    chunk: ChunkConfig = field(default_factory=ChunkConfig)
    bm25: Bm25Config = field(default_factory=Bm25Config)
    fusion: FusionConfig = field(default_factory=FusionConfig)
    aqgr: AqgrConfig = field(default_factory=AqgrConfig)
    render: SummaryRenderOptions = field(default_factory=SummaryRenderOptions)
    summarize: SummarizeConfig = field(default_factory=SummarizeConfig)
    llm: LlmProviderConfig = field(default_factory=LlmProviderConfig)
    embed_provider: EmbedProviderConfig = field(default_factory=EmbedProviderConfig)
    server: ServerConfig = field(default_factory=ServerConfig)

    def validate(self) -> None:
        self.chunk.validate()
        self.fusion.validate()
        self.aqgr.validate()
        self.summarize.validate(self.llm.max_input_tokens)
        if self.bm25.k1 <= 0 or not 0 <= self.bm25.b <= 1:
            raise InvalidConfigError(f"bad bm25 parameters k1={self.bm25.k1} b={self.bm25.b}")
        if self.llm.kind not in ("mock", "replay", "http-generic"):
            raise InvalidConfigError(f"unknown llm kind: {self.llm.kind}")
        if self.llm.kind == "replay" and not self.llm.fixtures_dir:
            raise InvalidConfigError("llm.kind=replay requires llm.fixtures_dir")
        if self.llm.kind == "http-generic" and not self.llm.url:
            raise InvalidConfigError("llm.kind=http-generic requires llm.url")
        if self.embed_provider.kind not in ("mock", "http-json"):
            raise InvalidConfigError(f"unknown embed kind: {self.embed_provider.kind}")
        if self.embed_provider.kind == "http-json" and not self.embed_provider.url:
            raise InvalidConfigError("embed_provider.kind=http-json requires url")
        self.server.host_port()
        for directory in (self.corpus_dir, self.corpus_dir / "judgments",
                          self.corpus_dir / "summaries", self.index_dir):
            directory.mkdir(parents=True, exist_ok=True)

    # -- factories ---------------------------------------------------------

    def judgments_dir(self) -> Path:
        return self.corpus_dir / "judgments"

    def summaries_dir(self) -> Path:
        return self.corpus_dir / "summaries"

    def make_llm_provider(self):
        if self.llm.kind == "replay":
            return ReplayProvider(self.llm.fixtures_dir)
        if self.llm.kind == "http-generic":
            return HttpGenericProvider(
                url=self.llm.url,
                api_key_env=self.llm.api_key_env,
                request_body=self.llm.request_body,
                response_text_path=self.llm.response_text_path,
                response_finish_path=self.llm.response_finish_path,
            )
        return MockProvider(rules=[("", self.llm.mock_text)])

    def make_gateway(self, provider=None) -> LlmGateway:
        return LlmGateway(provider or self.make_llm_provider(),
                          max_retries=self.llm.max_retries,
                          retry_base_delay=self.llm.retry_base_delay,
                          max_concurrent=self.llm.max_concurrent)

    def make_embedder(self):
        if self.embed_provider.kind == "http-json":
            return HttpEmbeddingProvider(url=self.embed_provider.url,
                                         api_key_env=self.embed_provider.api_key_env,
                                         dim=self.embed_provider.dim or None,
                                         max_concurrent=self.embed_provider.max_concurrent_embed)
        return MockEmbeddingProvider(dim=self.embed_provider.dim, seed=self.embed_provider.seed)

    def request_defaults(self) -> GenerationRequest:
        return GenerationRequest(
            prompt_text="",
            max_input_tokens=self.llm.max_input_tokens,
            max_output_tokens=self.llm.max_output_tokens,
            temperature=self.llm.temperature,
            top_p=self.llm.top_p,
            top_k=self.llm.top_k,
        )


def _merge(base: dict, extra: dict) -> dict:
    out = dict(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _env_overrides(env) -> dict:
    out: dict = {}
    for name, value in env.items():
        if not name.startswith(ENV_PREFIX):
            continue
        path = name[len(ENV_PREFIX):].lower().split("__")
        node = out
        for segment in path[:-1]:
            node = node.setdefault(segment, {})
        node[path[-1]] = yaml.safe_load(value)
    return out


def _build(data: dict, base_dir: Path) -> AppConfig:
    def section(name) -> dict:
        value = data.get(name) or {}
        if not isinstance(value, dict):
            raise InvalidConfigError(f"config section {name!r} must be a mapping")
        return value

    chunk_raw = section("chunk")
    chunk = ChunkConfig(
        chunk_size=int(chunk_raw.get("chunk_size", ChunkConfig.chunk_size)),
        chunk_overlap=int(chunk_raw.get("chunk_overlap", ChunkConfig.chunk_overlap)),
        separators=tuple(chunk_raw.get("separators", ChunkConfig.separators)),
    )
    fusion_raw = section("fusion")
    fusion = FusionConfig(
        per_retriever_k=int(fusion_raw.get("per_retriever_k", FusionConfig.per_retriever_k)),
        rrf_constant=float(fusion_raw.get("rrf_constant", FusionConfig.rrf_constant)),
        weights=tuple(float(w) for w in fusion_raw.get("weights", FusionConfig.weights)),
    )
    render_raw = section("render")
    render = SummaryRenderOptions(
        include_precedents=bool(render_raw.get("include_precedents", True)),
        compact=bool(render_raw.get("compact", False)),
    )
    aqgr_raw = section("aqgr")
    aqgr = AqgrConfig(
        questions_to_select=int(aqgr_raw.get("questions_to_select", 3)),
        fusion=fusion,
        render_opts=render,
        context_reserve_tokens=int(aqgr_raw.get("context_reserve_tokens", 1500)),
    )
    summarize_raw = section("summarize")
    summarize = SummarizeConfig(
        chunk_cfg=chunk,
        retrieve_k=int(summarize_raw.get("retrieve_k", 4)),
        long_doc_threshold_chars=int(summarize_raw.get("long_doc_threshold_chars", 122_880)),
        mode=str(summarize_raw.get("mode", "auto")),
    )
    bm25_raw = section("bm25")
    bm25 = Bm25Config(k1=float(bm25_raw.get("k1", 1.2)), b=float(bm25_raw.get("b", 0.75)))

    def dataclass_from(cls, raw: dict, tuple_fields=()):
        kwargs = {}
        for f in cls.__dataclass_fields__:
            if f in raw:
                kwargs[f] = tuple(raw[f]) if f in tuple_fields else raw[f]
        return cls(**kwargs)

    llm = dataclass_from(LlmProviderConfig, section("llm"))
    embed = dataclass_from(EmbedProviderConfig, section("embed_provider"))
    server = dataclass_from(ServerConfig, section("server"), tuple_fields=("cors_origins",))

    def resolve(path_value) -> Path:
        path = Path(path_value)
        return path if path.is_absolute() else base_dir / path

    cfg = AppConfig(
        corpus_dir=resolve(data.get("corpus_dir", "corpus")),
        index_dir=resolve(data.get("index_dir", "index")),
        chunk=chunk, bm25=bm25, fusion=fusion, aqgr=aqgr, render=render,
        summarize=summarize, llm=llm, embed_provider=embed, server=server,
    )
    cfg.validate()
    return cfg


def load_config(path: str | Path | None = None, env=None) -> AppConfig:
    """Load config from a YAML file (optional) with environment overrides."""
    env = os.environ if env is None else env
    data: dict = {}
    base_dir = Path.cwd()
    if path is not None:
        path = Path(path)
        loaded = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(loaded, dict):
            raise InvalidConfigError(f"config root must be a mapping: {path}")
        data = loaded
        base_dir = path.resolve().parent
    data = _merge(data, _env_overrides(env))
    return _build(data, base_dir)
