// Controller: owns the UiSession, calls the API, re-renders after every
// transition. Extracted from main.ts so tests can drive complete flows
// with an injected client and DOM root.

import { ApiClient, retryWithBackoff } from "./api.js";
import {
  UiSession,
  backToSelection,
  initialSession,
  requestFailed,
  requestStarted,
  resultsReceived,
  selectedRanks,
  sessionCreated,
  toggleQuestion,
  withFact,
} from "./state.js";
import { Handlers, renderApp, renderSummaryModal } from "./views.js";

export class AppController {
  session: UiSession = initialSession();
  private lastAction: (() => Promise<void>) | null = null;

  constructor(private root: HTMLElement, private client: ApiClient) {}

  private render(): void {
    renderApp(this.root, this.session, this.handlers());
  }

  start(): void {
    this.render();
  }

  private handlers(): Handlers {
    return {
      onSubmitFact: (text) => void this.submitFact(text),
      onToggleQuestion: (rank) => {
        this.session = toggleQuestion(this.session, rank);
        this.render();
      },
      onRetrieve: () => void this.retrieve(),
      onBackToQuestions: () => {
        this.session = backToSelection(this.session);
        this.render();
      },
      onRegenerate: () => {
        this.session = { ...initialSession(), factText: this.session.factText };
        this.render();
      },
      onShowSummary: (docId) => void this.showSummary(docId),
      onRetry: () => void (this.lastAction ? this.lastAction() : Promise.resolve()),
      onReset: () => {
        this.session = initialSession();
        this.render();
      },
    };
  }

  async submitFact(text: string): Promise<void> {
    if (!text.trim()) return;
    this.lastAction = () => this.submitFact(text);
    this.session = requestStarted(withFact(this.session, text));
    this.render();
    try {
      const response = await retryWithBackoff(() => this.client.createSession(text));
      this.session = sessionCreated(this.session, response);
    } catch (exc) {
      this.session = requestFailed(this.session, exc);
    }
    this.render();
  }

  async retrieve(): Promise<void> {
    const sessionId = this.session.sessionId;
    if (!sessionId) return;
    this.lastAction = () => this.retrieve();
    this.session = requestStarted(this.session);
    this.render();
    try {
      await this.client.selectQuestions(sessionId, selectedRanks(this.session));
      const response = await retryWithBackoff(() => this.client.retrieve(sessionId));
      this.session = resultsReceived(this.session, response);
    } catch (exc) {
      this.session = requestFailed(this.session, exc);
    }
    this.render();
  }

  async showSummary(docId: string): Promise<void> {
    try {
      const summary = await this.client.getSummary(docId);
      renderSummaryModal(this.root, summary, () => undefined);
    } catch (exc) {
      this.session = requestFailed(this.session, exc);
      this.render();
    }
  }
}
