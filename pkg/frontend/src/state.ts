// UI session state and its pure transition functions. The view layer is a
// function of this state plus local checkbox choices; nothing here talks
// to the network.

import {
  ApiError,
  ApiRankedCase,
  SessionCreateResponse,
  RetrieveResponse,
} from "./types.js";

export type Phase = "enter-fact" | "selecting" | "results";

export interface QuestionState {
  text: string;
  relevanceRank: number;
  checked: boolean;
}

export interface UiError {
  kind: string;
  message: string;
  retryable: boolean;
}

export interface UiSession {
  phase: Phase;
  sessionId: string | null;
  factText: string;
  questions: QuestionState[];
  results: ApiRankedCase[] | null;
  includedDocIds: string[];
  warnings: string[];
  pending: boolean;
  error: UiError | null;
}

export const PRECHECKED_TOP_N = 3;

export function initialSession(): UiSession {
  return {
    phase: "enter-fact",
    sessionId: null,
    factText: "",
    questions: [],
    results: null,
    includedDocIds: [],
    warnings: [],
    pending: false,
    error: null,
  };
}

export function withFact(session: UiSession, factText: string): UiSession {
  return { ...session, factText };
}

export function requestStarted(session: UiSession): UiSession {
  return { ...session, pending: true, error: null };
}

export function sessionCreated(
  session: UiSession,
  response: SessionCreateResponse,
): UiSession {
  const questions = response.questions.map((q) => ({
    text: q.text,
    relevanceRank: q.relevanceRank,
    checked: q.selected && q.relevanceRank <= PRECHECKED_TOP_N,
  }));
  return {
    ...session,
    phase: "selecting",
    sessionId: response.sessionId,
    questions,
    results: null,
    includedDocIds: [],
    warnings: [],
    pending: false,
    error: null,
  };
}

export function toggleQuestion(session: UiSession, rank: number): UiSession {
  const questions = session.questions.map((q) =>
    q.relevanceRank === rank ? { ...q, checked: !q.checked } : q,
  );
  return { ...session, questions };
}

export function selectedRanks(session: UiSession): number[] {
  return session.questions.filter((q) => q.checked).map((q) => q.relevanceRank);
}

export function canRetrieve(session: UiSession): boolean {
  return !session.pending && session.questions.some((q) => q.checked);
}

export function resultsReceived(session: UiSession, response: RetrieveResponse): UiSession {
  // the server sorts already; re-sorting keeps the invariant local too
  const ranked = [...response.rankedCases].sort((a, b) => b.score - a.score);
  return {
    ...session,
    phase: "results",
    results: ranked,
    includedDocIds: response.includedDocIds,
    warnings: response.warnings,
    pending: false,
    error: null,
  };
}

export function backToSelection(session: UiSession): UiSession {
  return { ...session, phase: "selecting", pending: false, error: null };
}

export function describeError(error: unknown): UiError {
  if (error instanceof ApiError) {
    switch (error.kind) {
      case "safety-blocked":
        return {
          kind: error.kind,
          message:
            "This scenario could not be processed for content-safety reasons. " +
            "Rephrasing the facts usually helps.",
          retryable: false,
        };
      case "provider-unavailable":
        return {
          kind: error.kind,
          message: "The language-model service is temporarily unavailable.",
          retryable: true,
        };
      case "network":
        return {
          kind: error.kind,
          message: "Could not reach the server. Check your connection.",
          retryable: true,
        };
      case "conflict":
        return {
          kind: error.kind,
          message: "The search index is not ready yet. Build the index and try again.",
          retryable: true,
        };
      case "not-found":
        return {
          kind: error.kind,
          message: "This session has expired. Start again from the facts.",
          retryable: false,
        };
      case "validation":
        return { kind: error.kind, message: error.detail, retryable: false };
      default:
        return { kind: error.kind, message: error.detail, retryable: true };
    }
  }
  return {
    kind: "unknown",
    message: error instanceof Error ? error.message : String(error),
    retryable: true,
  };
}

export function requestFailed(session: UiSession, error: unknown): UiSession {
  return { ...session, pending: false, error: describeError(error) };
}
