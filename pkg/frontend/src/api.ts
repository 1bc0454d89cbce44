// Typed client for the tutoring HTTP API. The UI never computes logic
// locally: every verdict, hint, and canonical form on screen came from
// one of these calls.

export interface QuestionSummary {
  id: string;
  level: string;
  phrasing: string;
  premise: string;
  target: string;
}

export interface RuleInfo {
  name: string;
  display_name: string;
}

export interface StepResponse {
  verdict: "valid" | "invalid" | "syntax_error" | "already_complete";
  current_expression: string;
  completed: boolean;
  detail?: string;
  position?: number;
}

export interface ProofStep {
  rule: string;
  display_name: string;
  expression: string;
}

export interface HintResponse {
  level: 1 | 2 | 3;
  completed: boolean;
  rule?: string;
  display_name?: string;
  expression?: string;
  proof?: ProofStep[];
}

export interface SolutionResponse {
  premise: string;
  target: string;
  complete: boolean;
  steps: ProofStep[];
}

export interface ParseResponse {
  ok: boolean;
  canonical?: string;
  error?: string;
  position?: number;
}

export interface ProgressResponse {
  questions: Record<string, "untouched" | "in_progress" | "completed">;
  levels: Record<string, { total: number; completed: number }>;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await fetch(this.baseUrl + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload.code ?? "server_error",
        payload.message ?? "request failed",
      );
    }
    return payload as T;
  }

  createSession(): Promise<{ session: string }> {
    return this.request("POST", "/api/session", {});
  }

  questions(level?: string): Promise<{ questions: QuestionSummary[] }> {
    const query = level ? `?level=${encodeURIComponent(level)}` : "";
    return this.request("GET", `/api/questions${query}`);
  }

  rules(): Promise<{ rules: RuleInfo[] }> {
    return this.request("GET", "/api/rules");
  }

  parsePreview(expression: string): Promise<ParseResponse> {
    return this.request("POST", "/api/parse", { expression });
  }

  submitStep(
    questionId: string,
    session: string,
    rule: string,
    expression: string,
  ): Promise<StepResponse> {
    return this.request("POST", `/api/attempt/${questionId}/step`, {
      session,
      rule,
      expression,
    });
  }

  requestHint(questionId: string, session: string): Promise<HintResponse> {
    return this.request("POST", `/api/attempt/${questionId}/hint`, { session });
  }

  solution(questionId: string): Promise<SolutionResponse> {
    return this.request("GET", `/api/attempt/${questionId}/solution`);
  }

  reset(questionId: string, session: string): Promise<{ ok: boolean }> {
    return this.request("POST", `/api/attempt/${questionId}/reset`, { session });
  }

  progress(session: string): Promise<ProgressResponse> {
    return this.request("GET", `/api/progress?session=${encodeURIComponent(session)}`);
  }
}
