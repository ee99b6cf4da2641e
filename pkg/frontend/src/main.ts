/** Console page wiring: wizard forms -> plan, simulate/run controls, live
 * status tabs, and the four report charts. All numbers displayed come from
 * server payloads; this file only does layout and event plumbing. */

import { ApiClient } from "./api.js";
import { renderReport } from "./charts.js";
import { applyAll, applyEvent, finishRun, newMonitor, tabs, type MonitorState } from "./monitor.js";
import type { RunEvent } from "./types.js";
import {
  allErrors,
  defaultBindingsStep,
  defaultEnvironmentStep,
  defaultStrategyStep,
  defaultWorkflowStep,
  emptyWizard,
  stepReachable,
  toPlanRequest,
  wizardComplete,
  type WizardState,
} from "./wizard.js";

const api = new ApiClient("");
let wizard: WizardState = emptyWizard();
let planId: string | null = null;
let runId: string | null = null;
let monitor: MonitorState = newMonitor();

function $(id: string): HTMLElement {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element;
}

function readNumber(id: string, fallback: number): number {
  const value = Number(($(id) as HTMLInputElement).value);
  return Number.isFinite(value) ? value : fallback;
}

function readString(id: string): string {
  return ($(id) as HTMLInputElement | HTMLSelectElement).value;
}

function collectWizard(): WizardState {
  const workflow = defaultWorkflowStep();
  workflow.source = readString("wf-source") as typeof workflow.source;
  workflow.width = readNumber("wf-width", 5);
  workflow.pattern = readString("wf-pattern") as typeof workflow.pattern;
  workflow.tasks = readNumber("wf-tasks", 10);
  workflow.seed = readNumber("wf-seed", 0);
  workflow.daxXml = ($("wf-dax") as HTMLTextAreaElement).value;

  const bindings = defaultBindingsStep();
  bindings.defaultKind = readString("bind-default") as typeof bindings.defaultKind;

  const environment = defaultEnvironmentStep();
  for (const tier of ["device", "edge", "cloud"] as const) {
    environment.sizes[tier] = readString(`env-${tier}-size`) as never;
    environment.counts[tier] = readNumber(`env-${tier}-count`, 2);
  }

  const strategy = defaultStrategyStep();
  strategy.strategy = readString("plan-strategy") as typeof strategy.strategy;
  strategy.scheduler = readString("plan-scheduler") as typeof strategy.scheduler;
  strategy.seed = readNumber("plan-seed", 42);
  strategy.wTime = readNumber("plan-wtime", 1);
  strategy.wEnergy = readNumber("plan-wenergy", 0);
  strategy.wCost = readNumber("plan-wcost", 0);
  const deadline = readString("plan-deadline");
  strategy.deadline = deadline ? Number(deadline) : null;

  return { workflow, bindings, environment, strategy };
}

function refreshWizardUi(): void {
  wizard = collectWizard();
  const errors = allErrors(wizard);
  const panels = ["workflow", "bindings", "environment", "strategy"] as const;
  panels.forEach((name, index) => {
    const step = (index + 1) as 1 | 2 | 3 | 4;
    const panel = $(`step-${name}`);
    const reachable = stepReachable(wizard, step);
    panel.classList.toggle("locked", !reachable);
    const errorBox = $(`errors-${name}`);
    errorBox.textContent = (errors[name] ?? []).join("; ");
  });
  ($("submit-plan") as HTMLButtonElement).disabled = !wizardComplete(wizard);
}

function setStatus(text: string): void {
  $("status-line").textContent = text;
}

async function submitPlan(): Promise<void> {
  try {
    const summary = await api.submitPlan(toPlanRequest(wizard));
    planId = summary.plan_id;
    runId = null;
    $("plan-summary").textContent =
      `${summary.plan_id}: ${summary.workflow} (${summary.tasks} tasks), ` +
      `${summary.strategy} + ${summary.scheduler}`;
    setStatus(`plan ${summary.plan_id} created`);
    ($("simulate") as HTMLButtonElement).disabled = false;
  } catch (error) {
    setStatus(`plan rejected: ${(error as Error).message}`);
  }
}

async function simulatePlan(): Promise<void> {
  if (!planId) return;
  try {
    const sim = (await api.simulate(planId)) as { metrics: Record<string, number> };
    setStatus(
      `simulated: makespan ${sim.metrics.makespan?.toFixed(3)}s, ` +
        `energy ${sim.metrics.energy?.toFixed(3)}J, cost $${sim.metrics.cost?.toFixed(5)}`,
    );
    ($("run-real") as HTMLButtonElement).disabled = false;
    await refreshReport();
  } catch (error) {
    setStatus(`simulation failed: ${(error as Error).message}`);
  }
}

function renderTabs(): void {
  const view = tabs(monitor);
  for (const name of ["standby", "running", "completed", "failed"] as const) {
    $(`tab-${name}`).textContent = view[name].join(", ") || "-";
    $(`count-${name}`).textContent = String(view[name].length);
  }
  $("tab-detail").innerHTML = view.detail
    .map((row) => `<tr><td>${row.task}</td><td>${row.status}</td></tr>`)
    .join("");
}

async function runReal(): Promise<void> {
  if (!planId) return;
  try {
    runId = await api.execute(planId);
    setStatus(`run ${runId} started`);
    ($("run-real") as HTMLButtonElement).disabled = true;
    await api.streamRun(runId, {
      onReplayStart: () => {
        monitor = newMonitor();
        renderTabs();
      },
      onEvent: (event: RunEvent) => {
        monitor = applyEvent(monitor, event);
        renderTabs();
      },
      onEnd: (outcome) => {
        monitor = finishRun(monitor, outcome ?? "unknown");
        setStatus(`run ${runId} finished: ${outcome}`);
        ($("run-real") as HTMLButtonElement).disabled = false;
      },
    });
    await refreshReport();
  } catch (error) {
    setStatus(`run failed: ${(error as Error).message}`);
    ($("run-real") as HTMLButtonElement).disabled = false;
  }
}

async function refreshReport(): Promise<void> {
  if (!planId) return;
  const doc = await api.report(planId, runId ?? undefined);
  const result = renderReport(doc);
  const panel = $("charts");
  if (!result.ok) {
    panel.innerHTML = `<div class="error-panel">${result.error}</div>`;
    return;
  }
  panel.innerHTML = [
    `<p>deadline verdict: <strong>${result.charts.verdict}</strong></p>`,
    result.charts.bar ?? "<p>no comparison sweep attached (POST /compare)</p>",
    result.charts.pie,
    result.charts.line,
    result.charts.gantt,
  ].join("\n");
}

export function boot(): void {
  document.querySelectorAll("input, select, textarea").forEach((element) => {
    element.addEventListener("input", refreshWizardUi);
  });
  $("submit-plan").addEventListener("click", () => void submitPlan());
  $("simulate").addEventListener("click", () => void simulatePlan());
  $("run-real").addEventListener("click", () => void runReal());
  monitor = applyAll([]);
  refreshWizardUi();
  renderTabs();
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  boot();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", boot);
}
