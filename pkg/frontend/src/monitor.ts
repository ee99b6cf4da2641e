/**
 * Live run monitor: a pure reducer from run events to per-task statuses and
 * the Standby / Running / Completed / Failed tabs (every task also appears
 * in Detail). Replaying the same event log always reconstructs the same
 * tabs, so stream reconnects just reset and reapply.
 */

import type { RunEvent, TaskStatus } from "./types.js";

export interface MonitorState {
  statuses: Record<string, TaskStatus>;
  order: string[]; // first-seen order, for stable Detail listings
  outcome: string | null;
  applied: number;
  ignored: number; // events dropped for violating the transition rule
}

export interface Tabs {
  standby: string[];
  running: string[];
  completed: string[];
  failed: string[];
  detail: Array<{ task: string; status: TaskStatus }>;
}

const LEGAL_NEXT: Record<TaskStatus, readonly TaskStatus[]> = {
  standby: ["running"],
  running: ["completed", "failed"],
  completed: [],
  failed: [],
};

export function newMonitor(): MonitorState {
  return { statuses: {}, order: [], outcome: null, applied: 0, ignored: 0 };
}

export function applyEvent(state: MonitorState, event: RunEvent): MonitorState {
  const current = state.statuses[event.task];
  let legal: boolean;
  if (current === undefined) {
    legal = event.status === "standby";
  } else {
    legal = LEGAL_NEXT[current].includes(event.status);
  }
  if (!legal) {
    return { ...state, ignored: state.ignored + 1 };
  }
  return {
    ...state,
    statuses: { ...state.statuses, [event.task]: event.status },
    order: current === undefined ? [...state.order, event.task] : state.order,
    applied: state.applied + 1,
  };
}

export function finishRun(state: MonitorState, outcome: string): MonitorState {
  return { ...state, outcome };
}

export function applyAll(events: readonly RunEvent[], outcome?: string): MonitorState {
  let state = newMonitor();
  for (const event of events) {
    state = applyEvent(state, event);
  }
  return outcome === undefined ? state : finishRun(state, outcome);
}

/** Each task lands in exactly one status tab and always in Detail. */
export function tabs(state: MonitorState): Tabs {
  const result: Tabs = { standby: [], running: [], completed: [], failed: [], detail: [] };
  for (const task of [...state.order].sort()) {
    const status = state.statuses[task]!;
    result[status].push(task);
    result.detail.push({ task, status });
  }
  return result;
}

export function isTerminal(state: MonitorState): boolean {
  return state.outcome !== null;
}
