// End-to-end flow against the real backend: spawn the HTTP service, drive
// the DOM like a student would, and check the acceptance journeys.

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";
import { App } from "../src/app.js";
import { ApiClient } from "../src/api.js";

const PORT = 8791;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 45_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/rules`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("backend did not come up");
}

beforeAll(async () => {
  const store = join(mkdtempSync(join(tmpdir(), "logictutor-e2e-")), "store.json");
  server = spawn(
    "python3",
    ["-m", "logictutor.cli", "serve", "--bind", `127.0.0.1:${PORT}`, "--store", store],
    { cwd: join(__dirname, "..", ".."), stdio: "ignore" },
  );
  await waitForServer();
});

afterAll(() => {
  server?.kill();
});

async function settle(times = 6): Promise<void> {
  for (let i = 0; i < times; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

async function until(
  predicate: () => boolean,
  what: string,
  timeoutMs = 15_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await new Promise((resolve) => setTimeout(resolve, 50));
  }
  throw new Error(`timed out waiting for ${what}`);
}

function testId(root: ParentNode, id: string): HTMLElement | null {
  return root.querySelector(`[data-testid="${id}"]`);
}

async function bootApp(): Promise<{ app: App; root: HTMLElement }> {
  const root = document.createElement("main");
  document.body.appendChild(root);
  const app = new App(new ApiClient(BASE), root, localStorage);
  await app.start();
  await until(() => testId(root, "question-list") !== null, "question list");
  return { app, root };
}

describe("student journeys against the live backend", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("completes the one-step De Morgan question end to end", async () => {
    localStorage.clear();
    localStorage.setItem("logictutor.tutorialSeen", "yes");
    const { root } = await bootApp();

    (testId(root, "tab-novice") as HTMLButtonElement).click();
    await settle();
    (testId(root, "question-n02") as HTMLButtonElement).click();
    await until(() => testId(root, "attempt-phrasing") !== null, "attempt screen");
    expect(testId(root, "attempt-phrasing")!.textContent).toContain("¬p∧¬q");

    const select = testId(root, "rule-select") as HTMLSelectElement;
    select.value = "DeMorgan";
    select.dispatchEvent(new Event("change"));
    const input = testId(root, "expression-input") as HTMLInputElement;
    input.value = "¬(p∨q)";
    input.dispatchEvent(new Event("input"));
    (testId(root, "submit-step") as HTMLButtonElement).click();
    await until(
      () => testId(root, "completion-banner") !== null,
      "completion banner",
    );
    const rows = root.querySelectorAll('[data-testid="step-row"]');
    expect(rows.length).toBe(1);
    expect(rows[0].textContent).toContain("De Morgan's Law");
  });

  it("escalates hints on the double-negation question", async () => {
    localStorage.clear();
    localStorage.setItem("logictutor.tutorialSeen", "yes");
    const { root } = await bootApp();
    (testId(root, "question-n01") as HTMLButtonElement).click();
    await until(() => testId(root, "request-hint") !== null, "attempt screen");

    (testId(root, "request-hint") as HTMLButtonElement).click();
    await until(() => testId(root, "hint-box") !== null, "first hint");
    expect(testId(root, "hint-box")!.textContent).toContain("Double Negation");
    expect(testId(root, "hint-expression")).toBeNull();

    (testId(root, "request-hint") as HTMLButtonElement).click();
    await until(() => testId(root, "hint-expression") !== null, "second hint");
    expect(testId(root, "hint-expression")!.textContent).toBe("p");
  });

  it("rejects a wrong step without leaking rule information", async () => {
    localStorage.clear();
    localStorage.setItem("logictutor.tutorialSeen", "yes");
    const { root, app } = await bootApp();
    (testId(root, "question-n01") as HTMLButtonElement).click();
    await until(() => testId(root, "rule-select") !== null, "attempt screen");

    const select = testId(root, "rule-select") as HTMLSelectElement;
    select.value = "Idempotence";
    select.dispatchEvent(new Event("change"));
    const input = testId(root, "expression-input") as HTMLInputElement;
    input.value = "p";
    input.dispatchEvent(new Event("input"));
    (testId(root, "submit-step") as HTMLButtonElement).click();
    await until(() => testId(root, "message") !== null, "verdict message");

    const text = testId(root, "message")!.textContent!;
    expect(text).toContain("Not quite");
    for (const rule of app.state.rules) {
      expect(text).not.toContain(rule.display_name);
    }
  });

  it("preserves progress across a reload", async () => {
    localStorage.clear();
    localStorage.setItem("logictutor.tutorialSeen", "yes");
    const first = await bootApp();
    (testId(first.root, "question-n02") as HTMLButtonElement).click();
    await until(() => testId(first.root, "rule-select") !== null, "attempt screen");
    const select = testId(first.root, "rule-select") as HTMLSelectElement;
    select.value = "DeMorgan";
    select.dispatchEvent(new Event("change"));
    const input = testId(first.root, "expression-input") as HTMLInputElement;
    input.value = "not (p or q)";
    input.dispatchEvent(new Event("input"));
    (testId(first.root, "submit-step") as HTMLButtonElement).click();
    await until(
      () => testId(first.root, "completion-banner") !== null,
      "completion banner",
    );
    const token = localStorage.getItem("logictutor.session");

    // simulate a reload: fresh DOM and app, same persisted storage
    document.body.innerHTML = "";
    const second = await bootApp();
    expect(localStorage.getItem("logictutor.session")).toBe(token);
    const badge = testId(second.root, "question-n02")!.querySelector(
      '[data-testid="badge-completed"]',
    );
    expect(badge).not.toBeNull();
  });
});
