// Wire types mirroring the service's JSON API.

export interface ApiQuestion {
  text: string;
  relevanceRank: number;
  selected: boolean;
}

export interface SessionCreateResponse {
  sessionId: string;
  questions: ApiQuestion[];
}

export interface ApiRankedCase {
  caseRef: string;
  docId: string | null;
  score: number;
  explanation: string;
  matchedIssues: number[];
}

export interface RetrieveResponse {
  rankedCases: ApiRankedCase[];
  includedDocIds: string[];
  warnings: string[];
}

export interface SummaryParty {
  role: string;
  name: string;
}

export interface SummaryAuthority {
  name: string;
  principle: string;
  application: string;
}

export interface SummaryPrinciple {
  principle: string;
  application: string;
}

export interface SummaryJson {
  court: string;
  case_no: string;
  kind_of_judgment: string;
  parties: SummaryParty[];
  date: string;
  bench_of_judges: string;
  facts: string;
  arguments: string;
  issues_or_questions: string[];
  reasoning: string;
  disposed_in_favour_of: string;
  final_judgment: string;
  statutes_referred: SummaryAuthority[];
  precedents_referred: SummaryAuthority[];
  new_legal_principles: SummaryPrinciple[];
  important_subjects: string[];
  source_judgment_id: string;
}

export type ApiErrorKind =
  | "validation"
  | "not-found"
  | "conflict"
  | "safety-blocked"
  | "provider-unavailable"
  | "network"
  | "unknown";

export class ApiError extends Error {
  kind: ApiErrorKind;
  status: number | null;
  detail: string;

  constructor(kind: ApiErrorKind, detail: string, status: number | null = null) {
    super(`${kind}: ${detail}`);
    this.kind = kind;
    this.detail = detail;
    this.status = status;
  }
}
