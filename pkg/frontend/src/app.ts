// Application shell: level selection, proof attempts, hints, tutorial.
// Rendering is a plain re-render of the root element from state; every
// displayed verdict originates from an API response.

import { ApiClient, ApiError } from "./api.js";
import {
  AppState,
  LEVELS,
  freshAttempt,
  initialState,
} from "./state.js";

const SESSION_KEY = "logictutor.session";
const TUTORIAL_KEY = "logictutor.tutorialSeen";

export const TUTORIAL_STEPS: ReadonlyArray<{ title: string; body: string }> = [
  {
    title: "Pick a level",
    body: "Questions are grouped as novice, learner and expert. Start anywhere; your progress is saved per question.",
  },
  {
    title: "Read the goal",
    body: "Each question asks you to prove two expressions equivalent, or that one is a tautology or fallacy.",
  },
  {
    title: "Choose a rule",
    body: "Every proof step applies one named equivalence rule. Pick it from the dropdown.",
  },
  {
    title: "Type the next expression",
    body: "Enter the whole expression as it looks after applying your rule. Plain spellings like 'not', '&' and '->' work; the preview shows how your input reads.",
  },
  {
    title: "Ask for hints",
    body: "Stuck? The first hint names the right rule, the second shows the next expression, and a third reveals the full solution without penalty.",
  },
  {
    title: "Review and retry",
    body: "Finished proofs stay on your progress page. Reset any question to attempt it again from scratch.",
  },
];

const ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
  "'": "&#39;",
};

function esc(text: string): string {
  return text.replace(/[&<>"']/g, (c) => ESCAPES[c]);
}

export class App {
  state: AppState = initialState();
  private previewTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private storage: Storage = localStorage,
  ) {}

  async start(): Promise<void> {
    try {
      await this.ensureSession();
      const [rules, questions, progress] = await Promise.all([
        this.api.rules(),
        this.api.questions(),
        this.api.progress(this.state.session!),
      ]);
      this.state.rules = rules.rules;
      this.state.questions = questions.questions;
      this.state.progress = progress.questions;
      this.state.offline = false;
    } catch {
      this.state.offline = true;
    }
    this.render();
  }

  private async ensureSession(): Promise<void> {
    const stored = this.storage.getItem(SESSION_KEY);
    if (stored) {
      try {
        await this.api.progress(stored);
        this.state.session = stored;
        return;
      } catch (error) {
        if (!(error instanceof ApiError)) throw error;
        // stale token: fall through and mint a fresh one
      }
    }
    const created = await this.api.createSession();
    this.state.session = created.session;
    this.storage.setItem(SESSION_KEY, created.session);
  }

  private tutorialPending(): boolean {
    return this.storage.getItem(TUTORIAL_KEY) !== "yes";
  }

  // ------------------------------------------------------------- rendering

  render(): void {
    if (this.state.offline) {
      this.root.innerHTML = `
        <div class="banner error" data-testid="offline-banner">
          Cannot reach the practice server.
          <button data-testid="retry">Retry</button>
        </div>`;
      this.bind("retry", () => this.start());
      return;
    }
    const shell =
      this.state.screen === "levels" ? this.renderLevels() : this.renderAttempt();
    this.root.innerHTML = shell + (this.tutorialPending() ? this.renderTutorial() : "");
    this.wire();
  }

  private badge(questionId: string): string {
    const status = this.state.progress[questionId] ?? "untouched";
    if (status === "completed") {
      return '<span class="badge done" data-testid="badge-completed">completed</span>';
    }
    if (status === "in_progress") {
      return '<span class="badge busy">in progress</span>';
    }
    return "";
  }

  private renderLevels(): string {
    const tabs = LEVELS.map(
      (level) => `
        <button class="tab ${level === this.state.level ? "active" : ""}"
                data-level="${level}" data-testid="tab-${level}">
          ${level}
        </button>`,
    ).join("");
    const items = this.state.questions
      .filter((q) => q.level === this.state.level)
      .map(
        (q) => `
        <li>
          <button class="question" data-question="${q.id}" data-testid="question-${q.id}">
            <span class="phrasing">${esc(q.phrasing)}</span>
            ${this.badge(q.id)}
          </button>
        </li>`,
      )
      .join("");
    return `
      <header>
        <h1>Logic Tutor</h1>
        <button data-testid="open-tutorial" class="linkish">Tutorial</button>
      </header>
      <nav class="tabs" data-testid="level-tabs">${tabs}</nav>
      <ul class="questions" data-testid="question-list">${items}</ul>`;
  }

  private renderAttempt(): string {
    const attempt = this.state.attempt!;
    const options = this.state.rules
      .map((r) => {
        const selected = r.name === attempt.pendingRule ? "selected" : "";
        return `<option value="${r.name}" ${selected}>${esc(r.display_name)}</option>`;
      })
      .join("");
    const steps = attempt.acceptedSteps
      .map(
        (step, index) => `
        <li data-testid="step-row">
          <span class="idx">${index + 1}.</span>
          <span class="rule">${esc(step.ruleDisplayName)}</span>
          <span class="expr">${esc(step.expression)}</span>
        </li>`,
      )
      .join("");
    const hint =
      attempt.hintShown.kind === "none"
        ? ""
        : attempt.hintShown.kind === "rule"
          ? `<div class="hint" data-testid="hint-box">Try the rule: <b>${esc(
              attempt.hintShown.displayName,
            )}</b></div>`
          : `<div class="hint" data-testid="hint-box">Apply <b>${esc(
              attempt.hintShown.displayName,
            )}</b> to reach <code data-testid="hint-expression">${esc(
              attempt.hintShown.expression,
            )}</code></div>`;
    const message = attempt.message
      ? `<div class="banner ${attempt.message.kind}" data-testid="message">${esc(
          attempt.message.text,
        )}</div>`
      : "";
    const completion = attempt.completed
      ? `<div class="banner success" data-testid="completion-banner">
           Proof complete! Review your steps below or pick another question.
         </div>`
      : "";
    const solutionRows = attempt.completionProof
      ? `<ol class="solution" data-testid="solution-steps">${attempt.completionProof
          .map(
            (s) =>
              `<li>${esc(s.display_name)}: <code>${esc(s.expression)}</code></li>`,
          )
          .join("")}</ol>`
      : "";
    const disabled = attempt.busy || attempt.completed ? "disabled" : "";
    return `
      <header>
        <button data-testid="back">&larr; Questions</button>
        <h1>Logic Tutor</h1>
      </header>
      <section class="attempt">
        <p class="phrasing" data-testid="attempt-phrasing">${esc(
          attempt.question.phrasing,
        )}</p>
        ${completion}
        <ol class="steps" data-testid="accepted-steps">
          <li><span class="idx">&mdash;</span><span class="rule">premise</span>
              <span class="expr">${esc(attempt.question.premise)}</span></li>
          ${steps}
        </ol>
        ${solutionRows}
        ${message}
        ${hint}
        <div class="entry">
          <select data-testid="rule-select" ${disabled}>
            <option value="">choose a rule&hellip;</option>
            ${options}
          </select>
          <input data-testid="expression-input" type="text"
                 placeholder="next expression"
                 value="${esc(attempt.pendingExpression)}" ${disabled} />
          <div class="preview" data-testid="parse-preview"></div>
          <button data-testid="submit-step" ${disabled}>Submit step</button>
          <button data-testid="request-hint" ${disabled}>Hint</button>
          <button data-testid="show-solution">Show solution</button>
          <button data-testid="reset">Reset</button>
        </div>
      </section>`;
  }

  private renderTutorial(): string {
    const steps = TUTORIAL_STEPS.map(
      (step, index) => `
      <li data-testid="tutorial-step">
        <b>${index + 1}. ${esc(step.title)}</b>
        <p>${esc(step.body)}</p>
      </li>`,
    ).join("");
    return `
      <div class="overlay" data-testid="tutorial">
        <div class="card">
          <h2>Welcome! Six quick steps</h2>
          <ol>${steps}</ol>
          <button data-testid="dismiss-tutorial">Got it</button>
        </div>
      </div>`;
  }

  // ---------------------------------------------------------------- wiring

  private bind(testId: string, handler: (event: Event) => void): void {
    const element = this.root.querySelector(`[data-testid="${testId}"]`);
    if (element) element.addEventListener("click", handler);
  }

  private wire(): void {
    this.bind("dismiss-tutorial", () => {
      this.storage.setItem(TUTORIAL_KEY, "yes");
      this.render();
    });
    this.bind("open-tutorial", () => {
      this.storage.removeItem(TUTORIAL_KEY);
      this.render();
    });
    if (this.state.screen === "levels") {
      this.root.querySelectorAll("[data-level]").forEach((tab) => {
        tab.addEventListener("click", () => {
          this.state.level = (tab as HTMLElement).dataset.level!;
          this.render();
        });
      });
      this.root.querySelectorAll("[data-question]").forEach((button) => {
        button.addEventListener("click", () => {
          const id = (button as HTMLElement).dataset.question!;
          void this.openQuestion(id);
        });
      });
      return;
    }
    this.bind("back", () => void this.showLevels());
    this.bind("submit-step", () => void this.submitStep());
    this.bind("request-hint", () => void this.requestHint());
    this.bind("show-solution", () => void this.showSolution());
    this.bind("reset", () => void this.resetAttempt());
    const select = this.root.querySelector(
      '[data-testid="rule-select"]',
    ) as HTMLSelectElement | null;
    select?.addEventListener("change", () => {
      this.state.attempt!.pendingRule = select.value;
    });
    const input = this.root.querySelector(
      '[data-testid="expression-input"]',
    ) as HTMLInputElement | null;
    input?.addEventListener("input", () => {
      this.state.attempt!.pendingExpression = input.value;
      this.schedulePreview(input.value);
    });
  }

  private schedulePreview(text: string): void {
    if (this.previewTimer) clearTimeout(this.previewTimer);
    this.previewTimer = setTimeout(() => void this.updatePreview(text), 150);
  }

  async updatePreview(text: string): Promise<void> {
    const box = this.root.querySelector('[data-testid="parse-preview"]');
    if (!box) return;
    if (!text.trim()) {
      box.textContent = "";
      return;
    }
    try {
      const parsed = await this.api.parsePreview(text);
      box.textContent = parsed.ok
        ? `reads as: ${parsed.canonical}`
        : `unreadable at position ${parsed.position}`;
    } catch {
      box.textContent = "";
    }
  }

  // --------------------------------------------------------------- actions

  async showLevels(): Promise<void> {
    this.state.screen = "levels";
    this.state.attempt = null;
    try {
      const progress = await this.api.progress(this.state.session!);
      this.state.progress = progress.questions;
    } catch {
      // keep the cached progress if the refresh fails
    }
    this.render();
  }

  async openQuestion(id: string): Promise<void> {
    const question = this.state.questions.find((q) => q.id === id);
    if (!question) return;
    this.state.screen = "attempt";
    this.state.attempt = freshAttempt(question);
    const status = this.state.progress[id];
    if (status === "completed") {
      this.state.attempt.completed = true;
      this.state.attempt.message = {
        kind: "info",
        text: "Already completed. Reset to attempt again.",
      };
    }
    this.render();
  }

  async submitStep(): Promise<void> {
    const attempt = this.state.attempt!;
    if (attempt.busy || attempt.completed) return;
    if (!attempt.pendingRule) {
      attempt.message = { kind: "error", text: "Pick a rule first." };
      this.render();
      return;
    }
    attempt.busy = true;
    this.render();
    try {
      const outcome = await this.api.submitStep(
        attempt.question.id,
        this.state.session!,
        attempt.pendingRule,
        attempt.pendingExpression,
      );
      if (outcome.verdict === "valid") {
        const rule = this.state.rules.find((r) => r.name === attempt.pendingRule);
        attempt.acceptedSteps.push({
          ruleDisplayName: rule?.display_name ?? attempt.pendingRule,
          expression: outcome.current_expression,
        });
        attempt.currentExpression = outcome.current_expression;
        attempt.pendingExpression = "";
        attempt.hintShown = { kind: "none" };
        attempt.message = outcome.completed
          ? null
          : { kind: "success", text: "Step accepted." };
        attempt.completed = outcome.completed;
        if (outcome.completed) {
          this.state.progress[attempt.question.id] = "completed";
        }
      } else if (outcome.verdict === "syntax_error") {
        attempt.message = {
          kind: "error",
          text: `That isn't a readable expression (position ${outcome.position}).`,
        };
      } else if (outcome.verdict === "already_complete") {
        attempt.completed = true;
        attempt.message = null;
      } else {
        // No mistake explanation on purpose: reason it out and try again.
        attempt.message = { kind: "error", text: "Not quite. Try again." };
      }
    } catch (error) {
      attempt.message = {
        kind: "error",
        text: error instanceof ApiError ? error.message : "Request failed.",
      };
    } finally {
      attempt.busy = false;
      this.render();
    }
  }

  async requestHint(): Promise<void> {
    const attempt = this.state.attempt!;
    if (attempt.busy || attempt.completed) return;
    attempt.busy = true;
    this.render();
    try {
      const hint = await this.api.requestHint(
        attempt.question.id,
        this.state.session!,
      );
      if (hint.level === 1 && hint.display_name) {
        attempt.hintShown = { kind: "rule", displayName: hint.display_name };
      } else if (hint.level === 2 && hint.display_name && hint.expression) {
        attempt.hintShown = {
          kind: "expression",
          displayName: hint.display_name,
          expression: hint.expression,
        };
      } else if (hint.level === 3) {
        attempt.completed = true;
        attempt.completionProof = hint.proof ?? [];
        attempt.hintShown = { kind: "none" };
        attempt.message = null;
        this.state.progress[attempt.question.id] = "completed";
      }
    } catch (error) {
      attempt.message = {
        kind: "error",
        text: error instanceof ApiError ? error.message : "Request failed.",
      };
    } finally {
      attempt.busy = false;
      this.render();
    }
  }

  async showSolution(): Promise<void> {
    const attempt = this.state.attempt!;
    try {
      const solution = await this.api.solution(attempt.question.id);
      attempt.completionProof = solution.steps;
    } catch (error) {
      attempt.message = {
        kind: "error",
        text: error instanceof ApiError ? error.message : "Request failed.",
      };
    }
    this.render();
  }

  async resetAttempt(): Promise<void> {
    const attempt = this.state.attempt!;
    try {
      await this.api.reset(attempt.question.id, this.state.session!);
      this.state.progress[attempt.question.id] = "untouched";
      this.state.attempt = freshAttempt(attempt.question);
    } catch (error) {
      attempt.message = {
        kind: "error",
        text: error instanceof ApiError ? error.message : "Request failed.",
      };
    }
    this.render();
  }
}

export function bootApp(root: HTMLElement, baseUrl = ""): App {
  const app = new App(new ApiClient(baseUrl), root);
  void app.start();
  return app;
}
