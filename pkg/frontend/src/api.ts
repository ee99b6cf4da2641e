/**
 * Thin client over the control-plane HTTP API, plus a replay-then-follow
 * event-stream consumer built on fetch (works in browsers and node, and
 * resubscription after a dropped connection replays the full log).
 */

import type { ApiError, PlanRequest, PlanSummary, Report, RunEvent } from "./types.js";

export class ControlPlaneError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

async function requestJson<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = (await response.json()) as T | ApiError;
  if (!response.ok) {
    const error = (body as ApiError).error ?? { code: "http-error", message: String(response.status) };
    throw new ControlPlaneError(error.code, error.message, response.status);
  }
  return body as T;
}

export interface SseMessage {
  event: string;
  data: unknown;
}

/** Parse a text/event-stream body into (event, data) messages. */
export async function* sseMessages(
  body: ReadableStream<Uint8Array>,
): AsyncGenerator<SseMessage> {
  const decoder = new TextDecoder();
  const reader = body.getReader();
  let buffer = "";
  while (true) {
    const { done, value } = await reader.read();
    if (done) break;
    buffer += decoder.decode(value, { stream: true });
    let split;
    while ((split = buffer.indexOf("\n\n")) >= 0) {
      const block = buffer.slice(0, split);
      buffer = buffer.slice(split + 2);
      let event = "message";
      let data = "";
      for (const line of block.split("\n")) {
        if (line.startsWith("event: ")) event = line.slice(7);
        else if (line.startsWith("data: ")) data = line.slice(6);
      }
      if (data) yield { event, data: JSON.parse(data) };
    }
  }
}

export class ApiClient {
  constructor(public readonly baseUrl: string) {}

  submitPlan(request: PlanRequest): Promise<PlanSummary> {
    return requestJson(`${this.baseUrl}/plans`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  simulate(planId: string): Promise<Record<string, unknown>> {
    return requestJson(`${this.baseUrl}/plans/${planId}/simulate`, { method: "POST" });
  }

  async execute(planId: string): Promise<string> {
    const body = await requestJson<{ run_id: string }>(
      `${this.baseUrl}/plans/${planId}/execute`,
      { method: "POST" },
    );
    return body.run_id;
  }

  report(planId: string, runId?: string): Promise<Report> {
    const query = runId ? `?run=${encodeURIComponent(runId)}` : "";
    return requestJson(`${this.baseUrl}/plans/${planId}/report${query}`);
  }

  compare(request: Record<string, unknown>): Promise<{ rows: unknown[] }> {
    return requestJson(`${this.baseUrl}/compare`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  /**
   * Stream one run's events. The server replays the full log before
   * following, so each (re)subscription starts from scratch; onReplayStart
   * tells the consumer to reset accumulated state.
   */
  async streamRun(
    runId: string,
    handlers: {
      onReplayStart: () => void;
      onEvent: (event: RunEvent) => void;
      onEnd: (outcome: string | null) => void;
    },
    maxReconnects = 5,
  ): Promise<void> {
    let attempts = 0;
    while (true) {
      const response = await fetch(`${this.baseUrl}/runs/${runId}/events`);
      if (!response.ok) {
        const body = (await response.json()) as ApiError;
        throw new ControlPlaneError(body.error.code, body.error.message, response.status);
      }
      handlers.onReplayStart();
      try {
        for await (const message of sseMessages(response.body!)) {
          if (message.event === "task") {
            handlers.onEvent(message.data as RunEvent);
          } else if (message.event === "end") {
            handlers.onEnd((message.data as { outcome: string | null }).outcome);
            return;
          }
        }
        // stream ended without the end marker: treat as a disconnect
      } catch (error) {
        if (attempts >= maxReconnects) throw error;
      }
      attempts += 1;
      if (attempts > maxReconnects) {
        throw new Error(`event stream for ${runId} dropped ${attempts} times`);
      }
    }
  }
}
