"""Provider-agnostic generation client.

Responsibilities: prompt assembly from plain-text templates, pre-flight
token-budget enforcement (an oversized request is never transmitted),
bounded retry on transient transport failures, and surfacing safety
blocks as data (``finish_reason``) rather than exceptions so every caller
must decide how to handle them.

Three providers ship: ``http-generic`` with configurable JSON field
mapping, ``replay`` reading fixtures keyed by the SHA-256 of the prompt,
and a scripted ``mock``. Replay makes whole pipelines byte-deterministic.
"""

import hashlib
import json
import re
import threading
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import httpx

from .chunker import estimate_tokens
from .errors import (ContextOverflowError, InvalidConfigError, MalformedAfterRetryError,
                     MalformedOutputError, MissingBindingError, ProviderError)

FINISH_COMPLETE = "complete"
FINISH_LENGTH_CAPPED = "length_capped"
FINISH_SAFETY_BLOCKED = "safety_blocked"
_FINISH_REASONS = (FINISH_COMPLETE, FINISH_LENGTH_CAPPED, FINISH_SAFETY_BLOCKED)

DEFAULT_MAX_INPUT_TOKENS = 30_720
DEFAULT_MAX_OUTPUT_TOKENS = 2_048

REPAIR_INSTRUCTION = "Return only valid JSON for the previous request."
_REPAIR_EXCERPT_CHARS = 2_000

TEMPLATE_SUMMARY = "summary"
TEMPLATE_LEGAL_QUESTIONS = "legal_questions"
TEMPLATE_RANK_CASES = "rank_cases"

_PROMPT_DIR = Path(__file__).parent / "prompts"
_PLACEHOLDER_RE = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")


@dataclass(frozen=True)
class GenerationRequest:
    prompt_text: str
    max_input_tokens: int = DEFAULT_MAX_INPUT_TOKENS
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS
    temperature: float = 0.9
    top_p: float = 1.0
    top_k: int = 1

    def validate(self) -> None:
        if not 0.0 <= self.temperature <= 2.0:
            raise InvalidConfigError(f"temperature must be in [0, 2], got {self.temperature}")
        if not 0.0 < self.top_p <= 1.0:
            raise InvalidConfigError(f"top_p must be in (0, 1], got {self.top_p}")
        if self.top_k < 1:
            raise InvalidConfigError(f"top_k must be >= 1, got {self.top_k}")
        if self.max_input_tokens < 1 or self.max_output_tokens < 1:
            raise InvalidConfigError("token limits must be positive")


@dataclass(frozen=True)
class GenerationResult:
    text: str
    finish_reason: str = FINISH_COMPLETE
    provider_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.finish_reason not in _FINISH_REASONS:
            raise InvalidConfigError(f"unknown finish_reason: {self.finish_reason}")
        if (self.text == "") != (self.finish_reason == FINISH_SAFETY_BLOCKED):
            raise InvalidConfigError(
                "result text must be empty exactly when safety-blocked "
                f"(finish_reason={self.finish_reason}, text length {len(self.text)})")

    @property
    def safety_blocked(self) -> bool:
        return self.finish_reason == FINISH_SAFETY_BLOCKED


def safety_blocked_result(reason: str = "provider safety block") -> GenerationResult:
    return GenerationResult(text="", finish_reason=FINISH_SAFETY_BLOCKED,
                            provider_meta={"reason": reason})


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str

    def placeholders(self) -> set[str]:
        return set(_PLACEHOLDER_RE.findall(self.body))


def load_template(name: str, path: str | Path | None = None) -> PromptTemplate:
    """Load a packaged template, or an override file when a path is given."""
    file_path = Path(path) if path is not None else _PROMPT_DIR / f"{name}.txt"
    return PromptTemplate(name=name, body=file_path.read_text(encoding="utf-8"))


def load_prompt_text(name: str) -> str:
    return (_PROMPT_DIR / f"{name}.txt").read_text(encoding="utf-8")


def render_prompt(template: PromptTemplate, bindings: dict[str, str]) -> str:
    """Pure placeholder substitution; unbound placeholders are an error."""
    def _sub(match: re.Match) -> str:
        name = match.group(1)
        if name not in bindings:
            raise MissingBindingError(f"template {template.name!r}: no binding for {{{name}}}")
        return bindings[name]

    return _PLACEHOLDER_RE.sub(_sub, template.body)


def prompt_fingerprint(prompt_text: str) -> str:
    return hashlib.sha256(prompt_text.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# providers

class TransientProviderFailure(Exception):
    """Internal marker for retryable transport-level failures."""


class MockProvider:
    """Scripted provider for tests: first matching rule wins.

    A rule is (matcher, response) where matcher is a substring or a
    predicate over the prompt, and response is a GenerationResult, a str,
    or a callable of the prompt. Unmatched prompts raise ProviderError so
    test gaps surface loudly.
    """

    def __init__(self, rules=None):
        self.rules = list(rules or [])
        self.calls: list[str] = []

    def add_rule(self, matcher, response) -> None:
        self.rules.append((matcher, response))

    def generate_raw(self, request: GenerationRequest) -> GenerationResult:
        prompt = request.prompt_text
        self.calls.append(prompt)
        for matcher, response in self.rules:
            matched = matcher(prompt) if callable(matcher) else (matcher in prompt)
            if not matched:
                continue
            if callable(response):
                response = response(prompt)
            if isinstance(response, GenerationResult):
                return response
            if isinstance(response, Exception):
                raise response
            return GenerationResult(text=str(response))
        raise ProviderError(f"mock provider: no rule matched prompt starting "
                            f"{prompt[:80]!r}")


class ReplayProvider:
    """Reads recorded responses keyed by SHA-256 of the exact prompt bytes."""

    def __init__(self, fixtures_dir: str | Path):
        self.fixtures_dir = Path(fixtures_dir)

    def generate_raw(self, request: GenerationRequest) -> GenerationResult:
        digest = prompt_fingerprint(request.prompt_text)
        path = self.fixtures_dir / f"{digest}.json"
        if not path.exists():
            raise ProviderError(f"no replay fixture {digest}.json in {self.fixtures_dir}")
        data = json.loads(path.read_text(encoding="utf-8"))
        return GenerationResult(text=data["text"], finish_reason=data["finish_reason"],
                                provider_meta=data.get("provider_meta", {}))


class RecordingProvider:
    """Wraps a live provider and writes replay fixtures as it goes."""

    def __init__(self, inner, fixtures_dir: str | Path):
        self.inner = inner
        self.fixtures_dir = Path(fixtures_dir)
        self.fixtures_dir.mkdir(parents=True, exist_ok=True)

    def generate_raw(self, request: GenerationRequest) -> GenerationResult:
        result = self.inner.generate_raw(request)
        digest = prompt_fingerprint(request.prompt_text)
        payload = {
            "prompt_sha256": digest,
            "prompt_preview": request.prompt_text[:160],
            "text": result.text,
            "finish_reason": result.finish_reason,
            "provider_meta": result.provider_meta,
        }
        (self.fixtures_dir / f"{digest}.json").write_text(
            json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        return result


def _walk_path(payload, dotted: str):
    current = payload
    for segment in dotted.split("."):
        if isinstance(current, list):
            current = current[int(segment)]
        elif isinstance(current, dict):
            current = current[segment]
        else:
            raise KeyError(segment)
    return current


class HttpGenericProvider:
    """JSON-over-HTTP provider with configurable field mapping.

    The request body template is deep-copied with string placeholders
    substituted: "{prompt}" inside strings, and values that are exactly
    "{temperature}", "{top_p}", "{top_k}", or "{max_output_tokens}" are
    replaced by the typed parameter.
    """

    def __init__(self, url: str, api_key_env: str = "LLM_API_KEY",
                 request_body: dict | None = None,
                 response_text_path: str = "text",
                 response_finish_path: str | None = None,
                 safety_finish_values: tuple[str, ...] = ("SAFETY", "safety"),
                 timeout: float = 60.0,
                 transport: httpx.BaseTransport | None = None):
        self.url = url
        self.api_key_env = api_key_env
        self.request_body = request_body or {"prompt": "{prompt}"}
        self.response_text_path = response_text_path
        self.response_finish_path = response_finish_path
        self.safety_finish_values = tuple(safety_finish_values)
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def _build_body(self, request: GenerationRequest):
        typed = {
            "{temperature}": request.temperature,
            "{top_p}": request.top_p,
            "{top_k}": request.top_k,
            "{max_output_tokens}": request.max_output_tokens,
        }

        def build(node):
            if isinstance(node, dict):
                return {k: build(v) for k, v in node.items()}
            if isinstance(node, list):
                return [build(v) for v in node]
            if isinstance(node, str):
                if node in typed:
                    return typed[node]
                return node.replace("{prompt}", request.prompt_text)
            return node

        return build(self.request_body)

    def generate_raw(self, request: GenerationRequest) -> GenerationResult:
        import os

        headers = {}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        try:
            resp = self._client.post(self.url, json=self._build_body(request), headers=headers)
        except httpx.HTTPError as exc:
            raise TransientProviderFailure(str(exc)) from exc
        if resp.status_code >= 500:
            raise TransientProviderFailure(f"server returned {resp.status_code}")
        if resp.status_code != 200:
            raise ProviderError(f"provider returned {resp.status_code}: {resp.text[:200]}")
        payload = resp.json()
        finish = None
        if self.response_finish_path:
            try:
                finish = str(_walk_path(payload, self.response_finish_path))
            except (KeyError, IndexError, ValueError):
                finish = None
        if finish in self.safety_finish_values:
            return safety_blocked_result(f"provider finish value {finish!r}")
        try:
            text = str(_walk_path(payload, self.response_text_path))
        except (KeyError, IndexError, ValueError) as exc:
            raise ProviderError(f"response missing text at {self.response_text_path!r}: {exc}")
        reason = FINISH_LENGTH_CAPPED if finish in ("MAX_TOKENS", "length") else FINISH_COMPLETE
        return GenerationResult(text=text, finish_reason=reason,
                                provider_meta={"http_finish": finish} if finish else {})


# ---------------------------------------------------------------------------
# gateway

class LlmGateway:
    """Budget enforcement, retry policy, and concurrency cap over a provider."""

    def __init__(self, provider, max_retries: int = 3, retry_base_delay: float = 0.5,
                 max_concurrent: int = 2, sleeper: Callable[[float], None] = time.sleep):
        self.provider = provider
        self.max_retries = max_retries
        self.retry_base_delay = retry_base_delay
        self._semaphore = threading.Semaphore(max_concurrent)
        self._sleep = sleeper

    def generate(self, request: GenerationRequest) -> GenerationResult:
        """Run one generation; raises ContextOverflowError before any network IO."""
        request.validate()
        tokens = estimate_tokens(request.prompt_text)
        if tokens > request.max_input_tokens:
            raise ContextOverflowError(
                f"prompt estimates {tokens} tokens, over the {request.max_input_tokens} limit")
        attempt = 0
        while True:
            try:
                with self._semaphore:
                    return self.provider.generate_raw(request)
            except TransientProviderFailure as exc:
                attempt += 1
                if attempt > self.max_retries:
                    raise ProviderError(
                        f"provider failed after {self.max_retries} retries: {exc}") from exc
                self._sleep(self.retry_base_delay * (2 ** (attempt - 1)))


# ---------------------------------------------------------------------------
# output parsing

_FENCE_RE = re.compile(r"```(?:[A-Za-z0-9_-]+)?\s*\n?(.*?)```", re.DOTALL)


def _balanced_objects(text: str):
    """Yield candidate top-level {...} spans, leftmost first, string-aware."""
    i = text.find("{")
    while i != -1:
        depth = 0
        in_string = False
        escaped = False
        for j in range(i, len(text)):
            ch = text[j]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
            elif ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    yield text[i:j + 1]
                    break
        i = text.find("{", i + 1)


def extract_json(text: str) -> dict:
    """Parse the first balanced top-level JSON object out of noisy model text."""
    candidates = [text]
    fenced = _FENCE_RE.search(text)
    if fenced:
        candidates.insert(0, fenced.group(1))
    for candidate in candidates:
        for span in _balanced_objects(candidate):
            try:
                parsed = json.loads(span)
            except json.JSONDecodeError:
                continue
            if isinstance(parsed, dict):
                return parsed
    raise MalformedOutputError("no parseable JSON object in model output", raw_text=text)


def _repair_prompt(original: str, malformed: str, max_input_tokens: int) -> str:
    """Original request plus the bad output and a terse repair instruction,
    trimmed to stay inside the input budget."""
    budget_chars = max_input_tokens * 4
    excerpt = malformed[:_REPAIR_EXCERPT_CHARS]
    while True:
        prompt = f"{original}\n{excerpt}\n{REPAIR_INSTRUCTION}" if excerpt \
            else f"{original}\n{REPAIR_INSTRUCTION}"
        if len(prompt) <= budget_chars or not excerpt:
            break
        excerpt = excerpt[:len(excerpt) // 2]
    if len(prompt) > budget_chars:
        keep = budget_chars - len(REPAIR_INSTRUCTION) - 1
        prompt = f"{original[:keep]}\n{REPAIR_INSTRUCTION}"
    return prompt


def generate_parsed(gateway: LlmGateway, request: GenerationRequest, parser):
    """Generate and parse, with one repair retry on malformed output.

    Returns (parsed, result); parsed is None when the provider safety-blocked,
    so callers always see the block. Raises MalformedAfterRetryError when the
    repair attempt is still unparseable.
    """
    result = gateway.generate(request)
    if result.safety_blocked:
        return None, result
    try:
        return parser(result.text), result
    except MalformedOutputError as first:
        repair_request = replace(
            request,
            prompt_text=_repair_prompt(request.prompt_text, first.raw_text,
                                       request.max_input_tokens))
        retry = gateway.generate(repair_request)
        if retry.safety_blocked:
            return None, retry
        try:
            return parser(retry.text), retry
        except MalformedOutputError as second:
            raise MalformedAfterRetryError(
                "output unparseable after repair retry", raw_text=second.raw_text) from second
