// Bootstrap: scenario picker, then a live session wired to the gateway.

import {
  closeSession,
  createSession,
  fetchLog,
  listScenarios,
  postMessage,
} from "./api";
import { SessionView } from "./state";
import { SessionStream } from "./stream";
import type { AgentRole, ScenarioSummary } from "./types";
import { SessionUi } from "./ui";

async function boot(): Promise<void> {
  const root = document.getElementById("app")!;
  let scenarios: ScenarioSummary[];
  try {
    scenarios = await listScenarios();
  } catch (error) {
    root.textContent = `Cannot reach the gateway: ${String(error)}`;
    return;
  }

  root.innerHTML = "";
  const heading = document.createElement("h1");
  heading.textContent = "Choose a case";
  root.append(heading);
  for (const scenario of scenarios) {
    const button = document.createElement("button");
    button.className = "scenario-choice";
    button.textContent = `${scenario.title} (${scenario.chief_complaint})`;
    button.onclick = () => startSession(root, scenario);
    root.append(button);
  }
}

async function startSession(root: HTMLElement, scenario: ScenarioSummary): Promise<void> {
  const sessionId = await createSession(scenario.id);
  const view = new SessionView(sessionId, scenario.title);

  const ui = new SessionUi(root, view, {
    sendText(target: AgentRole, text: string) {
      const bubble = view.addStudentMessage(target, text);
      ui.render();
      postMessage(sessionId, { target, text })
        .then((response) => view.markDelivered(bubble.localId, response.event_seq))
        .catch(() => view.markFailed(bubble.localId))
        .finally(() => ui.render());
    },
    sendAction(target: AgentRole, action: string) {
      const bubble = view.addStudentMessage(target, `[${action}]`);
      ui.render();
      postMessage(sessionId, { target, action })
        .then((response) => view.markDelivered(bubble.localId, response.event_seq))
        .catch(() => view.markFailed(bubble.localId))
        .finally(() => ui.render());
    },
    dismissBanner(seq: number) {
      view.dismissBanner(seq);
      ui.render();
    },
    closeSession() {
      closeSession(sessionId)
        .catch(() => undefined)
        .finally(() => ui.render());
    },
  });

  const stream = new SessionStream(sessionId, {
    onFrame(frame) {
      view.applyFrame(frame);
      ui.render();
    },
    onStatus(status) {
      view.setConnection(status);
      if (status === "live") {
        // Backfill anything missed while disconnected; the reducer drops
        // duplicates by sequence number.
        fetchLog(sessionId, view.state.lastSeq + 1)
          .then((entries) => {
            if (view.applyBackfill(entries) > 0) ui.render();
          })
          .catch(() => undefined);
      }
      ui.render();
    },
    nextSeq: () => view.state.lastSeq + 1,
  });

  ui.render();
  stream.connect();
}

boot();
