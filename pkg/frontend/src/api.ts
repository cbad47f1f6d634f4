// Thin typed client over the gapnet HTTP API. Every mutation carries the
// version the client last saw; the server rejects stale writes with 409 and
// this module surfaces that as a distinct error, never by merging.

import type {
  CompletenessDoc,
  ContributionDoc,
  ContributionStatsDoc,
  CorrectnessDoc,
  DecisionDoc,
  HealthDoc,
  LookupDoc,
  Pos,
  StateKind,
  SynsetLocationDoc,
  TaskDetailDoc,
  TaskListDoc,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly field: string | null;

  constructor(status: number, code: string, message: string, field: string | null = null) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.field = field;
  }
}

export function isStaleVersion(err: unknown): boolean {
  return err instanceof ApiError && err.code === "stale-version";
}

export function isUnreachable(err: unknown): boolean {
  return err instanceof ApiError && err.code === "unreachable";
}

export interface TaskFilter {
  actor?: string;
  state?: StateKind;
  pos?: Pos | "n" | "v" | "a" | "r";
}

interface MutationEnvelope {
  task: TaskDetailDoc;
}

export class WorkbenchApi {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, "unreachable", `service unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const detail = (body as { error?: { code?: string; message?: string; field?: string | null } } | null)?.error;
      throw new ApiError(
        response.status,
        detail?.code ?? "unknown",
        detail?.message ?? `request failed with status ${response.status}`,
        detail?.field ?? null,
      );
    }
    return body as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  health(): Promise<HealthDoc> {
    return this.request("/health");
  }

  tasks(filter: TaskFilter = {}): Promise<TaskListDoc> {
    const params = new URLSearchParams();
    if (filter.actor) params.set("actor", filter.actor);
    if (filter.state) params.set("state", filter.state);
    if (filter.pos) params.set("pos", filter.pos);
    const query = params.toString();
    return this.request(`/tasks${query ? `?${query}` : ""}`);
  }

  task(taskId: string, actor?: string): Promise<TaskDetailDoc> {
    const query = actor ? `?actor=${encodeURIComponent(actor)}` : "";
    return this.request(`/tasks/${encodeURIComponent(taskId)}${query}`);
  }

  async submitContribution(
    taskId: string,
    actor: string,
    observedVersion: number,
    contribution: ContributionDoc,
  ): Promise<TaskDetailDoc> {
    const doc = await this.post<MutationEnvelope>(
      `/tasks/${encodeURIComponent(taskId)}/contribution`,
      { actor, observedVersion, contribution },
    );
    return doc.task;
  }

  async peerReview(
    taskId: string,
    actor: string,
    observedVersion: number,
    decision: DecisionDoc,
  ): Promise<TaskDetailDoc> {
    const doc = await this.post<MutationEnvelope>(
      `/tasks/${encodeURIComponent(taskId)}/peer-review`,
      { actor, observedVersion, decision },
    );
    return doc.task;
  }

  async expertReview(
    taskId: string,
    actor: string,
    observedVersion: number,
    decision: DecisionDoc,
  ): Promise<TaskDetailDoc> {
    const doc = await this.post<MutationEnvelope>(
      `/tasks/${encodeURIComponent(taskId)}/expert-review`,
      { actor, observedVersion, decision },
    );
    return doc.task;
  }

  synset(synsetId: string): Promise<SynsetLocationDoc> {
    return this.request(`/synsets/${encodeURIComponent(synsetId)}`);
  }

  lookup(form: string, pos?: string): Promise<LookupDoc> {
    const params = new URLSearchParams({ form });
    if (pos) params.set("pos", pos);
    return this.request(`/lookup?${params.toString()}`);
  }

  contributionStats(scope: "approved" | "all" = "approved"): Promise<ContributionStatsDoc> {
    return this.request(`/metrics/contributions?scope=${scope}`);
  }

  correctness(): Promise<CorrectnessDoc> {
    return this.request("/metrics/correctness");
  }

  completeness(): Promise<CompletenessDoc> {
    return this.request("/metrics/completeness");
  }
}
