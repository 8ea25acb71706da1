// Session view state: a pure reducer over stream frames plus optimistic
// student bubbles. All rendering decisions live here so the DOM layer stays
// trivial and the logic is testable without a browser.

import type {
  AgentRole,
  CriterionScores,
  LogEntry,
  ReportPayload,
  StreamFrame,
} from "./types";

export interface StudentBubble {
  kind: "student";
  localId: number;
  target: AgentRole;
  text: string;
  status: "pending" | "delivered" | "failed";
  seq: number | null;
}

export interface AgentBubble {
  kind: "agent";
  seq: number;
  agent: AgentRole;
  text: string;
}

export type TimelineItem = StudentBubble | AgentBubble;

export interface Banner {
  seq: number;
  label: string;
  hint: string;
  criterion: string;
  dismissed: boolean;
}

export type Connection = "connecting" | "live" | "reconnecting" | "closed";

export interface ViewState {
  sessionId: string;
  scenarioTitle: string;
  timeline: TimelineItem[];
  gauges: CriterionScores | null;
  assistanceLabel: string | null;
  assistanceCrisp: number | null;
  banners: Banner[];
  report: ReportPayload | null;
  connection: Connection;
  lastSeq: number;
}

export class SessionView {
  readonly state: ViewState;
  private nextLocalId = 1;

  constructor(sessionId: string, scenarioTitle: string) {
    this.state = {
      sessionId,
      scenarioTitle,
      timeline: [],
      gauges: null,
      assistanceLabel: null,
      assistanceCrisp: null,
      banners: [],
      report: null,
      connection: "connecting",
      lastSeq: 0,
    };
  }

  get activeBanner(): Banner | null {
    for (let i = this.state.banners.length - 1; i >= 0; i--) {
      const banner = this.state.banners[i]!;
      if (!banner.dismissed) return banner;
    }
    return null;
  }

  setConnection(connection: Connection): void {
    this.state.connection = connection;
  }

  /** Apply one stream frame; duplicates (seq already seen) are ignored. */
  applyFrame(frame: StreamFrame): boolean {
    if (frame.seq <= this.state.lastSeq) return false;
    this.state.lastSeq = frame.seq;
    switch (frame.kind) {
      case "agent_reply":
        this.state.timeline.push({
          kind: "agent",
          seq: frame.seq,
          agent: frame.payload.agent,
          text: frame.payload.text,
        });
        break;
      case "metrics":
        this.state.gauges = frame.payload.scores;
        break;
      case "decision":
        this.state.gauges = frame.payload.scores;
        this.state.assistanceLabel = frame.payload.label;
        this.state.assistanceCrisp = frame.payload.crisp;
        if (frame.payload.intervene && frame.payload.hint) {
          this.state.banners.push({
            seq: frame.seq,
            label: frame.payload.label,
            hint: frame.payload.hint,
            criterion: frame.payload.deficient_criterion,
            dismissed: false,
          });
        }
        break;
      case "report":
        this.state.report = frame.payload;
        break;
    }
    return true;
  }

  /** Replay log entries fetched over HTTP (reconnect backfill path). */
  applyBackfill(entries: LogEntry[]): number {
    let applied = 0;
    for (const entry of entries) {
      const frame = frameFromLogEntry(entry);
      if (frame && this.applyFrame(frame)) applied++;
    }
    return applied;
  }

  dismissBanner(seq: number): void {
    for (const banner of this.state.banners) {
      if (banner.seq === seq) banner.dismissed = true;
    }
  }

  addStudentMessage(target: AgentRole, text: string): StudentBubble {
    const bubble: StudentBubble = {
      kind: "student",
      localId: this.nextLocalId++,
      target,
      text,
      status: "pending",
      seq: null,
    };
    this.state.timeline.push(bubble);
    return bubble;
  }

  /** Reconcile an optimistic bubble with the server-assigned sequence. */
  markDelivered(localId: number, eventSeq: number): void {
    const bubble = this.findBubble(localId);
    if (bubble) {
      bubble.status = "delivered";
      bubble.seq = eventSeq;
    }
  }

  markFailed(localId: number): void {
    const bubble = this.findBubble(localId);
    if (bubble) bubble.status = "failed";
  }

  private findBubble(localId: number): StudentBubble | undefined {
    return this.state.timeline.find(
      (item): item is StudentBubble =>
        item.kind === "student" && item.localId === localId,
    );
  }
}

/** Map a persisted log entry onto the equivalent stream frame. */
export function frameFromLogEntry(entry: LogEntry): StreamFrame | null {
  switch (entry.kind) {
    case "agent_reply":
      return {
        kind: "agent_reply",
        seq: entry.seq,
        ts: entry.ts,
        payload: entry.payload as never,
      };
    case "scores":
      return {
        kind: "metrics",
        seq: entry.seq,
        ts: entry.ts,
        payload: entry.payload as never,
      };
    case "decision":
      return {
        kind: "decision",
        seq: entry.seq,
        ts: entry.ts,
        payload: entry.payload as never,
      };
    case "report":
      return {
        kind: "report",
        seq: entry.seq,
        ts: entry.ts,
        payload: entry.payload as never,
      };
    default:
      return null;
  }
}
