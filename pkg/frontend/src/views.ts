// DOM rendering. Each render function rebuilds its container from the
// current state; no hidden view-local caches affect what is shown.

import { SummaryJson } from "./types.js";
import { UiSession, canRetrieve } from "./state.js";

export interface Handlers {
  onSubmitFact(text: string): void;
  onToggleQuestion(rank: number): void;
  onRetrieve(): void;
  onBackToQuestions(): void;
  onRegenerate(): void;
  onShowSummary(docId: string): void;
  onRetry(): void;
  onReset(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function button(label: string, className: string, onClick: () => void): HTMLButtonElement {
  const node = el("button", className, label);
  node.type = "button";
  node.addEventListener("click", onClick);
  return node;
}

function renderErrorBanner(session: UiSession, handlers: Handlers): HTMLElement | null {
  if (!session.error) return null;
  const banner = el("div", `error-banner error-${session.error.kind}`);
  banner.setAttribute("role", "alert");
  banner.appendChild(el("p", "error-message", session.error.message));
  if (session.error.retryable) {
    banner.appendChild(button("Retry", "retry-button", handlers.onRetry));
  }
  return banner;
}

function renderPendingNote(session: UiSession): HTMLElement | null {
  if (!session.pending) return null;
  return el("p", "pending-note", "Working…");
}

function renderFactEntry(session: UiSession, handlers: Handlers): HTMLElement {
  const view = el("section", "view view-fact-entry");
  view.appendChild(el("h2", "", "Describe the factual scenario"));
  view.appendChild(
    el("p", "hint",
       "Paste the facts of the matter. The system proposes the legal questions " +
       "most relevant to them; you choose which ones drive the precedent search."),
  );
  const textarea = el("textarea", "fact-input");
  textarea.rows = 10;
  textarea.placeholder = "In 1961, the appellant was appointed…";
  textarea.value = session.factText;
  view.appendChild(textarea);
  const submit = button("Suggest legal questions", "primary submit-fact", () =>
    handlers.onSubmitFact(textarea.value),
  );
  submit.disabled = session.pending;
  view.appendChild(submit);
  return view;
}

function renderQuestionSelection(session: UiSession, handlers: Handlers): HTMLElement {
  const view = el("section", "view view-questions");
  view.appendChild(el("h2", "", "Select the questions of law"));
  view.appendChild(el("p", "fact-recap", truncate(session.factText, 280)));

  const list = el("ol", "question-list");
  for (const question of session.questions) {
    const item = el("li", "question-item");
    const label = el("label", "question-label");
    const checkbox = el("input") as HTMLInputElement;
    checkbox.type = "checkbox";
    checkbox.checked = question.checked;
    checkbox.dataset.rank = String(question.relevanceRank);
    checkbox.addEventListener("change", () =>
      handlers.onToggleQuestion(question.relevanceRank),
    );
    label.appendChild(checkbox);
    label.appendChild(el("span", "question-text", question.text));
    item.appendChild(label);
    list.appendChild(item);
  }
  view.appendChild(list);

  const actions = el("div", "actions");
  const retrieve = button("Retrieve precedents", "primary retrieve-button",
                          handlers.onRetrieve);
  retrieve.disabled = !canRetrieve(session);
  actions.appendChild(retrieve);
  actions.appendChild(button("Edit facts and regenerate", "secondary regenerate-button",
                             handlers.onRegenerate));
  view.appendChild(actions);
  if (!session.questions.some((q) => q.checked)) {
    view.appendChild(el("p", "selection-hint",
                        "Select at least one question to enable retrieval."));
  }
  return view;
}

function renderQueryBanner(session: UiSession): HTMLElement {
  const banner = el("aside", "query-banner");
  banner.appendChild(el("h3", "", "Query"));
  banner.appendChild(el("p", "query-fact", truncate(session.factText, 240)));
  const chosen = session.questions.filter((q) => q.checked);
  const list = el("ul", "query-questions");
  for (const question of chosen) {
    list.appendChild(el("li", "query-question", question.text));
  }
  banner.appendChild(list);
  return banner;
}

function renderResults(session: UiSession, handlers: Handlers): HTMLElement {
  const view = el("section", "view view-results");
  view.appendChild(renderQueryBanner(session));
  view.appendChild(el("h2", "", "Ranked precedents"));

  const list = el("ol", "case-list");
  for (const ranked of session.results ?? []) {
    const item = el("li", "case-card");
    const head = el("div", "case-head");
    head.appendChild(el("span", "case-ref", ranked.caseRef));
    head.appendChild(el("span", "case-score", `Relevance ${ranked.score}/10`));
    item.appendChild(head);
    if (ranked.explanation) {
      item.appendChild(el("p", "case-explanation", ranked.explanation));
    }
    if (ranked.matchedIssues.length) {
      item.appendChild(
        el("p", "case-issues", `Addresses question ${ranked.matchedIssues.join(", ")}`),
      );
    }
    if (ranked.docId) {
      item.appendChild(
        button("View structured summary", "link summary-link", () =>
          handlers.onShowSummary(ranked.docId as string),
        ),
      );
    }
    list.appendChild(item);
  }
  if (!(session.results ?? []).length) {
    view.appendChild(el("p", "no-results", "No precedents were returned for this query."));
  }
  view.appendChild(list);

  for (const warning of session.warnings) {
    view.appendChild(el("p", "result-warning", warning));
  }
  const actions = el("div", "actions");
  actions.appendChild(button("Back to questions", "secondary back-button",
                             handlers.onBackToQuestions));
  actions.appendChild(button("New scenario", "secondary reset-button", handlers.onReset));
  view.appendChild(actions);
  return view;
}

function truncate(text: string, limit: number): string {
  return text.length <= limit ? text : text.slice(0, limit - 1) + "…";
}

export function renderApp(root: HTMLElement, session: UiSession, handlers: Handlers): void {
  root.textContent = "";
  const banner = renderErrorBanner(session, handlers);
  if (banner) root.appendChild(banner);
  const pending = renderPendingNote(session);
  if (pending) root.appendChild(pending);
  if (session.phase === "enter-fact") {
    root.appendChild(renderFactEntry(session, handlers));
  } else if (session.phase === "selecting") {
    root.appendChild(renderQuestionSelection(session, handlers));
  } else {
    root.appendChild(renderResults(session, handlers));
  }
}

const SUMMARY_ROWS: Array<[string, (s: SummaryJson) => string]> = [
  ["Court", (s) => s.court],
  ["Case No", (s) => s.case_no],
  ["Kind of Judgment", (s) => s.kind_of_judgment],
  ["Parties", (s) => s.parties.map((p) => `${capitalize(p.role)}: ${p.name}`).join("; ")],
  ["Date", (s) => s.date],
  ["Bench of Judges", (s) => s.bench_of_judges],
  ["Facts", (s) => s.facts],
  ["Arguments", (s) => s.arguments],
  ["Issues or Questions", (s) => s.issues_or_questions.join("\n")],
  ["Reasoning", (s) => s.reasoning],
  ["Disposed in Favour of", (s) => s.disposed_in_favour_of],
  ["Final Judgment", (s) => s.final_judgment],
  ["Statutes Referred", (s) => formatAuthorities(s.statutes_referred)],
  ["Precedents Referred", (s) => formatAuthorities(s.precedents_referred)],
  ["New Legal Principles",
   (s) => s.new_legal_principles
     .map((p) => (p.application ? `${p.principle} — ${p.application}` : p.principle))
     .join("\n")],
  ["Important Subjects", (s) => s.important_subjects.join("; ")],
];

function capitalize(text: string): string {
  return text ? text[0].toUpperCase() + text.slice(1) : text;
}

function formatAuthorities(
  authorities: Array<{ name: string; principle: string; application: string }>,
): string {
  return authorities
    .map((a) => {
      const parts = [a.name];
      if (a.principle) parts.push(`Principle: ${a.principle}`);
      if (a.application) parts.push(`Application: ${a.application}`);
      return parts.join(" | ");
    })
    .join("\n");
}

export function renderSummaryModal(
  root: HTMLElement,
  summary: SummaryJson,
  onClose: () => void,
): void {
  const overlay = el("div", "modal-overlay");
  const modal = el("div", "modal summary-modal");
  modal.setAttribute("role", "dialog");
  modal.appendChild(el("h3", "", `Structured summary — ${summary.source_judgment_id}`));
  const table = el("table", "summary-table");
  for (const [label, extract] of SUMMARY_ROWS) {
    const value = extract(summary);
    if (!value) continue;
    const row = el("tr", "summary-row");
    row.appendChild(el("th", "summary-key", label));
    row.appendChild(el("td", "summary-value", value));
    table.appendChild(row);
  }
  modal.appendChild(table);
  modal.appendChild(
    button("Close", "secondary close-modal", () => {
      overlay.remove();
      onClose();
    }),
  );
  overlay.appendChild(modal);
  root.appendChild(overlay);
}
