// WebSocket subscription with reconnect. On every (re)connect the client
// asks the server for frames from the next unseen sequence number, so a
// dropped connection backfills without duplicates.

import type { StreamFrame } from "./types";

export interface StreamHandlers {
  onFrame(frame: StreamFrame): void;
  onStatus(status: "live" | "reconnecting" | "closed"): void;
  /** Next from_seq to request; the view's lastSeq + 1. */
  nextSeq(): number;
}

export interface StreamOptions {
  /** WebSocket constructor, injectable for tests. */
  socketFactory?: (url: string) => WebSocket;
  reconnectDelayMs?: number;
  baseUrl?: string;
}

export class SessionStream {
  private socket: WebSocket | null = null;
  private stopped = false;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly factory: (url: string) => WebSocket;
  private readonly delay: number;
  private readonly base: string;

  constructor(
    private readonly sessionId: string,
    private readonly handlers: StreamHandlers,
    options: StreamOptions = {},
  ) {
    this.factory = options.socketFactory ?? ((url) => new WebSocket(url));
    this.delay = options.reconnectDelayMs ?? 1000;
    this.base = options.baseUrl ?? defaultBaseUrl();
  }

  connect(): void {
    if (this.stopped) return;
    const fromSeq = this.handlers.nextSeq();
    const url = `${this.base}/sessions/${this.sessionId}/stream?from_seq=${fromSeq}`;
    const socket = this.factory(url);
    this.socket = socket;

    socket.onopen = () => this.handlers.onStatus("live");
    socket.onmessage = (event) => {
      const frame = JSON.parse(
        typeof event.data === "string" ? event.data : "",
      ) as StreamFrame;
      this.handlers.onFrame(frame);
    };
    socket.onclose = () => this.scheduleReconnect();
    socket.onerror = () => {
      // close fires afterwards; nothing to do here
    };
  }

  private scheduleReconnect(): void {
    if (this.stopped) {
      this.handlers.onStatus("closed");
      return;
    }
    this.handlers.onStatus("reconnecting");
    this.reconnectTimer = setTimeout(() => this.connect(), this.delay);
  }

  close(): void {
    this.stopped = true;
    if (this.reconnectTimer !== null) clearTimeout(this.reconnectTimer);
    this.socket?.close();
    this.handlers.onStatus("closed");
  }
}

function defaultBaseUrl(): string {
  const { protocol, host } = window.location;
  return `${protocol === "https:" ? "wss:" : "ws:"}//${host}`;
}
