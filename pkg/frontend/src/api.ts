// Typed client for the registry service. Compose requests supersede each
// other: at most one response is ever delivered per burst of interactions,
// and it is always the response to the newest request.

import type {
  ComposeResponse,
  RadicalDetail,
  RadicalSummary,
} from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export interface ComposeOutcome {
  stale: boolean;
  response?: ComposeResponse;
}

export class RegistryClient {
  private composeSeq = 0;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) =>
      fetch(input, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw new ServiceError(await describeError(response), response.status);
    }
    return (await response.json()) as T;
  }

  async radicals(): Promise<RadicalSummary[]> {
    const payload = await this.getJson<{ radicals: RadicalSummary[] }>(
      "/radicals",
    );
    return payload.radicals;
  }

  async radicalDetail(id: string): Promise<RadicalDetail> {
    return this.getJson<RadicalDetail>(`/radicals/${encodeURIComponent(id)}`);
  }

  async concepts(query: string): Promise<{ id: string; name: string }[]> {
    const payload = await this.getJson<{
      concepts: { id: string; name: string }[];
    }>(`/concepts?query=${encodeURIComponent(query)}`);
    return payload.concepts;
  }

  /**
   * POST /compose with supersession: when a newer compose has been issued
   * before this one resolves, the outcome is marked stale and carries no
   * response, so the UI never renders out-of-date semantics.
   */
  async compose(spec: Record<string, unknown>): Promise<ComposeOutcome> {
    const ticket = ++this.composeSeq;
    const response = await this.fetchImpl(`${this.baseUrl}/compose`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(spec),
    });
    if (ticket !== this.composeSeq) {
      return { stale: true };
    }
    if (!response.ok) {
      throw new ServiceError(await describeError(response), response.status);
    }
    return { stale: false, response: (await response.json()) as ComposeResponse };
  }
}

async function describeError(response: Response): Promise<string> {
  try {
    const payload = (await response.json()) as {
      error?: { message?: string };
    };
    return payload.error?.message ?? `service error ${response.status}`;
  } catch {
    return `service error ${response.status}`;
  }
}
