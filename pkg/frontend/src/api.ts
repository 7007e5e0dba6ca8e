// Thin JSON client over the service API. The fetch implementation is
// injectable so tests can drive the whole UI from canned transports.

import {
  ApiError,
  ApiErrorKind,
  ApiQuestion,
  RetrieveResponse,
  SessionCreateResponse,
  SummaryJson,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export function classifyStatus(status: number): ApiErrorKind {
  if (status === 400) return "validation";
  if (status === 404) return "not-found";
  if (status === 409) return "conflict";
  if (status === 422) return "safety-blocked";
  if (status === 503) return "provider-unavailable";
  return "unknown";
}

async function errorFrom(response: Response): Promise<ApiError> {
  let detail = response.statusText || `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { detail?: string };
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(classifyStatus(response.status), detail, response.status);
}

export class ApiClient {
  private baseUrl: string;
  private fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (exc) {
      throw new ApiError("network", exc instanceof Error ? exc.message : String(exc));
    }
    if (!response.ok) throw await errorFrom(response);
    return (await response.json()) as T;
  }

  createSession(factText: string): Promise<SessionCreateResponse> {
    return this.request("POST", "/api/sessions", { factText });
  }

  selectQuestions(sessionId: string, ranks: number[]): Promise<{ questions: ApiQuestion[] }> {
    return this.request("PATCH", `/api/sessions/${sessionId}/questions`, {
      selectedRanks: ranks,
    });
  }

  retrieve(sessionId: string): Promise<RetrieveResponse> {
    return this.request("POST", `/api/sessions/${sessionId}/retrieve`);
  }

  getSummary(docId: string): Promise<SummaryJson> {
    return this.request("GET", `/api/summaries/${docId}`);
  }
}

// Single retry with linear backoff for transient provider outages; anything
// that is not retryable rethrows immediately.
export async function retryWithBackoff<T>(
  fn: () => Promise<T>,
  attempts = 2,
  baseDelayMs = 400,
  sleep: (ms: number) => Promise<void> = (ms) => new Promise((r) => setTimeout(r, ms)),
): Promise<T> {
  let lastError: unknown;
  for (let attempt = 0; attempt < attempts; attempt += 1) {
    try {
      return await fn();
    } catch (exc) {
      lastError = exc;
      const retryable =
        exc instanceof ApiError &&
        (exc.kind === "provider-unavailable" || exc.kind === "network");
      if (!retryable || attempt === attempts - 1) throw exc;
      await sleep(baseDelayMs * (attempt + 1));
    }
  }
  throw lastError;
}
