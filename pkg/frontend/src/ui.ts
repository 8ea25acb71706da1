// DOM layer: renders the view state and wires user actions. Deliberately
// dumb; everything it shows comes straight from SessionView.

import type { SessionView } from "./state";
import type { AgentRole, CriterionScores } from "./types";
import { CRITERIA } from "./types";

export interface UiActions {
  sendText(target: AgentRole, text: string): void;
  sendAction(target: AgentRole, action: string): void;
  dismissBanner(seq: number): void;
  closeSession(): void;
}

const TABS: { role: AgentRole; title: string; structured: boolean; hintText: string }[] = [
  { role: "patient", title: "Patient", structured: false, hintText: "Ask the patient a question" },
  { role: "exam", title: "Exam", structured: true, hintText: "Body site, e.g. chest" },
  { role: "diagnostic", title: "Tests", structured: true, hintText: "Test id, e.g. ecg" },
  { role: "intervention", title: "Interventions", structured: true, hintText: "Intervention id, e.g. aspirin" },
];

const CRITERION_TITLES: Record<string, string> = {
  professionalism: "Professionalism",
  medical_relevance: "Medical relevance",
  ethical_behavior: "Ethical behavior",
  contextual_distraction: "Contextual distraction",
};

export class SessionUi {
  private activeTab: AgentRole = "patient";

  constructor(
    private readonly root: HTMLElement,
    private readonly view: SessionView,
    private readonly actions: UiActions,
  ) {}

  setTab(role: AgentRole): void {
    this.activeTab = role;
    this.render();
  }

  render(): void {
    const state = this.view.state;
    this.root.innerHTML = "";

    const header = el("header", "session-header");
    header.append(
      el("h1", "", state.scenarioTitle),
      el("span", `connection connection-${state.connection}`, state.connection),
    );
    this.root.append(header);

    const banner = this.view.activeBanner;
    const bannerHost = el("div", "banner-host");
    if (banner) {
      const box = el("div", `banner banner-${slug(banner.label)}`);
      box.dataset.seq = String(banner.seq);
      box.append(
        el("strong", "banner-label", `${banner.label} assistance`),
        el("span", "banner-hint", banner.hint),
      );
      const dismiss = el("button", "banner-dismiss", "Dismiss") as HTMLButtonElement;
      dismiss.onclick = () => this.actions.dismissBanner(banner.seq);
      box.append(dismiss);
      bannerHost.append(box);
    }
    this.root.append(bannerHost);

    this.root.append(this.renderGauges(state.gauges, state.assistanceLabel, state.assistanceCrisp));
    this.root.append(this.renderTimeline());
    if (state.report) {
      this.root.append(this.renderReport());
    } else {
      this.root.append(this.renderComposer());
    }
  }

  private renderGauges(
    gauges: CriterionScores | null,
    label: string | null,
    crisp: number | null,
  ): HTMLElement {
    const host = el("section", "gauges");
    for (const criterion of CRITERIA) {
      const value = gauges ? gauges[criterion] : null;
      const gauge = el("div", "gauge");
      gauge.dataset.criterion = criterion;
      const meter = el("div", "gauge-bar");
      const fill = el("div", "gauge-fill");
      fill.style.width = value === null ? "0%" : `${Math.round(value * 100)}%`;
      meter.append(fill);
      gauge.append(
        el("label", "", CRITERION_TITLES[criterion] ?? criterion),
        meter,
        el("span", "gauge-value", value === null ? "-" : value.toFixed(2)),
      );
      host.append(gauge);
    }
    const assistance = el("div", "assistance");
    assistance.dataset.label = label ?? "";
    assistance.textContent =
      label === null ? "Assistance: -" : `Assistance: ${label} (${crisp?.toFixed(3)})`;
    host.append(assistance);
    return host;
  }

  private renderTimeline(): HTMLElement {
    const host = el("section", "timeline");
    for (const item of this.view.state.timeline) {
      if (item.kind === "student") {
        const bubble = el("div", `bubble student status-${item.status}`, item.text);
        bubble.dataset.target = item.target;
        if (item.seq !== null) bubble.dataset.seq = String(item.seq);
        host.append(bubble);
      } else {
        const bubble = el("div", `bubble agent agent-${item.agent}`, item.text);
        bubble.dataset.seq = String(item.seq);
        host.append(bubble);
      }
    }
    return host;
  }

  private renderComposer(): HTMLElement {
    const host = el("section", "composer");
    const tabs = el("nav", "tabs");
    for (const tab of TABS) {
      const button = el(
        "button",
        `tab${tab.role === this.activeTab ? " active" : ""}`,
        tab.title,
      ) as HTMLButtonElement;
      button.dataset.role = tab.role;
      button.onclick = () => this.setTab(tab.role);
      tabs.append(button);
    }
    host.append(tabs);

    const tab = TABS.find((t) => t.role === this.activeTab)!;
    const form = el("form", "composer-form") as HTMLFormElement;
    const input = el("input", "composer-input") as HTMLInputElement;
    input.placeholder = tab.hintText;
    input.name = "content";
    const send = el("button", "composer-send", tab.structured ? "Perform" : "Send") as HTMLButtonElement;
    form.append(input, send);
    form.onsubmit = (event) => {
      event.preventDefault();
      const content = input.value.trim();
      if (!content) return;
      if (tab.structured) {
        this.actions.sendAction(tab.role, content);
      } else {
        this.actions.sendText(tab.role, content);
      }
      input.value = "";
    };
    host.append(form);

    const close = el("button", "close-session", "End session") as HTMLButtonElement;
    close.onclick = () => this.actions.closeSession();
    host.append(close);
    return host;
  }

  private renderReport(): HTMLElement {
    const report = this.view.state.report!;
    const host = el("section", "report");
    host.append(el("h2", "", "Final report"));
    const summary = el("ul", "report-summary");
    for (const line of report.summary_lines) {
      summary.append(el("li", "", line));
    }
    host.append(summary);
    for (const [criterion, histogram] of Object.entries(report.label_histograms)) {
      const row = Object.entries(histogram)
        .map(([label, count]) => `${label}: ${count}`)
        .join(", ");
      host.append(el("p", "report-histogram", `${CRITERION_TITLES[criterion] ?? criterion}: ${row}`));
    }
    return host;
  }
}

function el(tag: string, className = "", text = ""): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function slug(label: string): string {
  return label.toLowerCase().replace(/\s+/g, "-");
}
