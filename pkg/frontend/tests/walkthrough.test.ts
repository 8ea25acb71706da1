// Drives the recorded chest-pain walkthrough (frames captured from the real
// pipeline; see tools/generate_fixture.py) through the full view + DOM stack
// and checks the published two-step escalation: exactly two hint banners,
// High then Very High, with the exact hint texts, and gauges that always
// mirror the latest decision frame.

import { beforeEach, describe, expect, it } from "vitest";

import { SessionView } from "../src/state";
import { SessionUi } from "../src/ui";
import type { CriterionScores, StreamFrame } from "../src/types";
import { CRITERIA } from "../src/types";

import fixtureFrames from "./fixtures/chest_pain_frames.json";

const RELEVANCE_HINT =
  "Consider focusing your questions on symptoms related to chest pain and cardiovascular risk factors.";
const CONSENT_HINT =
  "Before proceeding, ensure you have explained the procedure and obtained the patient's consent.";

const frames = fixtureFrames as unknown as StreamFrame[];

function renderedGauges(root: HTMLElement): Record<string, string> {
  const values: Record<string, string> = {};
  root.querySelectorAll<HTMLElement>(".gauge").forEach((gauge) => {
    values[gauge.dataset.criterion!] =
      gauge.querySelector(".gauge-value")!.textContent!;
  });
  return values;
}

describe("chest-pain walkthrough in the browser client", () => {
  let root: HTMLElement;
  let view: SessionView;
  let ui: SessionUi;

  beforeEach(() => {
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById("app")!;
    view = new SessionView("fixture-session", "Acute Chest Pain");
    ui = new SessionUi(root, view, {
      sendText: () => undefined,
      sendAction: () => undefined,
      dismissBanner: (seq) => view.dismissBanner(seq),
      closeSession: () => undefined,
    });
  });

  it("shows exactly two banners, High then Very High, with the exact hints", () => {
    const observed: { seq: number; label: string; hint: string }[] = [];
    const seen = new Set<number>();

    for (const frame of frames) {
      view.applyFrame(frame);
      ui.render();
      const banner = root.querySelector<HTMLElement>(".banner");
      if (banner) {
        const seq = Number(banner.dataset.seq);
        if (!seen.has(seq)) {
          seen.add(seq);
          observed.push({
            seq,
            label: banner.querySelector(".banner-label")!.textContent!,
            hint: banner.querySelector(".banner-hint")!.textContent!,
          });
        }
      }
    }

    expect(observed).toHaveLength(2);
    expect(observed[0]!.label).toBe("High assistance");
    expect(observed[0]!.hint).toBe(RELEVANCE_HINT);
    expect(observed[1]!.label).toBe("Very High assistance");
    expect(observed[1]!.hint).toBe(CONSENT_HINT);
    expect(observed[0]!.seq).toBeLessThan(observed[1]!.seq);
    expect(view.state.banners).toHaveLength(2);
  });

  it("keeps the gauges in step with every decision frame", () => {
    for (const frame of frames) {
      view.applyFrame(frame);
      ui.render();
      if (frame.kind !== "decision") continue;
      const expected = frame.payload.scores as CriterionScores;
      const shown = renderedGauges(root);
      for (const criterion of CRITERIA) {
        expect(shown[criterion]).toBe(expected[criterion].toFixed(2));
      }
      const assistance = root.querySelector<HTMLElement>(".assistance")!;
      expect(assistance.dataset.label).toBe(frame.payload.label);
    }
  });

  it("quiet decisions update gauges without raising a banner", () => {
    const firstDecision = frames.find((frame) => frame.kind === "decision")!;
    view.applyFrame(frames[0]!);
    view.applyFrame(frames[1]!);
    view.applyFrame(firstDecision);
    ui.render();
    expect(firstDecision.kind === "decision" && firstDecision.payload.intervene).toBe(false);
    expect(root.querySelector(".banner")).toBeNull();
    expect(root.querySelector<HTMLElement>(".assistance")!.dataset.label).toBe("Low");
  });

  it("dismissing the High banner does not hide the later Very High banner", () => {
    for (const frame of frames) {
      view.applyFrame(frame);
      ui.render();
      const banner = root.querySelector<HTMLElement>(".banner");
      if (banner && banner.querySelector(".banner-label")!.textContent === "High assistance") {
        (banner.querySelector(".banner-dismiss") as HTMLButtonElement).click();
        ui.render();
        expect(root.querySelector(".banner")).toBeNull();
      }
    }
    const finalBanner = root.querySelector<HTMLElement>(".banner");
    expect(finalBanner).not.toBeNull();
    expect(finalBanner!.querySelector(".banner-label")!.textContent).toBe(
      "Very High assistance",
    );
  });

  it("renders the final report after the report frame", () => {
    for (const frame of frames) view.applyFrame(frame);
    ui.render();
    const report = root.querySelector(".report");
    expect(report).not.toBeNull();
    expect(report!.textContent).toContain("2 interventions");
  });

  it("timeline matches the stream's agent replies, without duplicates on backfill", () => {
    for (const frame of frames) view.applyFrame(frame);
    // Re-apply everything as a reconnect backfill would.
    for (const frame of frames) view.applyFrame(frame);
    ui.render();
    const replies = frames.filter((frame) => frame.kind === "agent_reply");
    const bubbles = root.querySelectorAll(".bubble.agent");
    expect(bubbles).toHaveLength(replies.length);
    const seqs = Array.from(bubbles).map((b) => Number((b as HTMLElement).dataset.seq));
    expect(seqs).toEqual([...seqs].sort((a, b) => a - b));
  });
});
