// Wire types mirroring the gateway's documented HTTP/WebSocket API.

export type AgentRole = "patient" | "exam" | "diagnostic" | "intervention";

export interface ScenarioSummary {
  id: string;
  title: string;
  chief_complaint: string;
}

export interface CriterionScores {
  professionalism: number;
  medical_relevance: number;
  ethical_behavior: number;
  contextual_distraction: number;
}

export const CRITERIA: (keyof CriterionScores)[] = [
  "professionalism",
  "medical_relevance",
  "ethical_behavior",
  "contextual_distraction",
];

export interface DecisionPayload {
  crisp: number;
  label: string;
  intervene: boolean;
  fired_rules: [number, number][];
  deficient_criterion: string;
  hint: string | null;
  scores: CriterionScores;
}

export interface AgentReplyPayload {
  agent: AgentRole;
  text: string;
  effects: string[];
  payload: Record<string, unknown> | null;
}

export interface MetricsPayload {
  scores: CriterionScores;
  provenance: "heuristic" | "external";
  metrics: Record<string, unknown>;
}

export interface ReportPayload {
  session_id: string;
  scenario_id: string;
  metrics: Record<string, unknown>;
  timeline: Record<string, unknown>[];
  label_histograms: Record<string, Record<string, number>>;
  summary_lines: string[];
}

export type StreamFrame =
  | { kind: "agent_reply"; seq: number; ts: string; payload: AgentReplyPayload }
  | { kind: "metrics"; seq: number; ts: string; payload: MetricsPayload }
  | { kind: "decision"; seq: number; ts: string; payload: DecisionPayload }
  | { kind: "report"; seq: number; ts: string; payload: ReportPayload };

export interface LogEntry {
  seq: number;
  kind: "student_event" | "agent_reply" | "scores" | "decision" | "report";
  ts: string;
  payload: Record<string, unknown>;
}

export interface MessageRequest {
  target: AgentRole;
  text?: string;
  action?: string;
  ts?: string;
}

export interface MessageResponse {
  event_seq: number;
  reply: { seq: number } & AgentReplyPayload;
  scores: { seq: number; values: CriterionScores; provenance: string };
  decision: { seq: number } & Omit<DecisionPayload, "scores">;
}
