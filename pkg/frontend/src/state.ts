// Application state. Accepted steps always mirror the server-acknowledged
// history; the hint level shown resets to none after an accepted step.

import type { ProofStep, QuestionSummary, RuleInfo } from "./api.js";

export type HintShown =
  | { kind: "none" }
  | { kind: "rule"; displayName: string }
  | { kind: "expression"; displayName: string; expression: string };

export interface AcceptedStep {
  ruleDisplayName: string;
  expression: string;
}

export interface AttemptViewState {
  question: QuestionSummary;
  acceptedSteps: AcceptedStep[];
  currentExpression: string;
  pendingRule: string;
  pendingExpression: string;
  hintShown: HintShown;
  completed: boolean;
  completionProof: ProofStep[] | null; // shown on the completion banner
  message: { kind: "info" | "error" | "success"; text: string } | null;
  busy: boolean; // one in-flight step/hint request at a time
}

export interface AppState {
  screen: "levels" | "attempt";
  session: string | null;
  level: string;
  questions: QuestionSummary[];
  progress: Record<string, string>;
  rules: RuleInfo[];
  attempt: AttemptViewState | null;
  offline: boolean;
}

export const LEVELS = ["novice", "learner", "expert"] as const;

export function freshAttempt(question: QuestionSummary): AttemptViewState {
  return {
    question,
    acceptedSteps: [],
    currentExpression: question.premise,
    pendingRule: "",
    pendingExpression: "",
    hintShown: { kind: "none" },
    completed: false,
    completionProof: null,
    message: null,
    busy: false,
  };
}

export function initialState(): AppState {
  return {
    screen: "levels",
    session: null,
    level: "novice",
    questions: [],
    progress: {},
    rules: [],
    attempt: null,
    offline: false,
  };
}
