// Thin HTTP client over the gateway; no scoring or inference happens here.

import type {
  LogEntry,
  MessageRequest,
  MessageResponse,
  ReportPayload,
  ScenarioSummary,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    const body = await response.text();
    throw new ApiError(response.status, body || response.statusText);
  }
  return (await response.json()) as T;
}

export function listScenarios(): Promise<ScenarioSummary[]> {
  return request("/scenarios");
}

export async function createSession(scenarioId: string): Promise<string> {
  const body = await request<{ session_id: string }>("/sessions", {
    method: "POST",
    body: JSON.stringify({ scenario_id: scenarioId }),
  });
  return body.session_id;
}

export function postMessage(
  sessionId: string,
  message: MessageRequest,
): Promise<MessageResponse> {
  return request(`/sessions/${sessionId}/messages`, {
    method: "POST",
    body: JSON.stringify(message),
  });
}

export function closeSession(sessionId: string): Promise<ReportPayload> {
  return request(`/sessions/${sessionId}/close`, { method: "POST" });
}

export async function fetchLog(
  sessionId: string,
  fromSeq = 1,
): Promise<LogEntry[]> {
  const body = await request<{ entries: LogEntry[] }>(
    `/sessions/${sessionId}/log?from_seq=${fromSeq}`,
  );
  return body.entries;
}
