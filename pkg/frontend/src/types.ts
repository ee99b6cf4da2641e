/** Document types mirroring the control-plane API, field for field. */

export type Tier = "device" | "edge" | "cloud";
export type SizeClass = "small" | "medium" | "large";
export type Strategy = "energy-optimal" | "all-in-edge" | "all-in-cloud";
export type SchedulerKind = "fcfs" | "round-robin" | "min-min" | "max-min" | "pso" | "ga";
export type BindingKind =
  | "pi-calculation"
  | "kmp-match"
  | "levenshtein-distance"
  | "selection-sort"
  | "simulated-only";
export type TaskStatus = "standby" | "running" | "completed" | "failed";

export interface WorkflowRequest {
  kind: "montage" | "pattern" | "dax" | "inline";
  width?: number;
  length_profile?: number;
  data_profile?: number;
  pattern?: "sequential" | "parallel" | "hybrid";
  tasks?: number;
  seed?: number;
  xml?: string;
  dag?: unknown;
}

export interface PlanRequest {
  workflow: WorkflowRequest;
  bindings?: {
    default?: BindingKind;
    tasks?: Record<string, { kind: BindingKind; params?: Record<string, number> }>;
  };
  environment?: {
    sizes?: Partial<Record<Tier, SizeClass>>;
    counts?: Partial<Record<Tier, number>>;
  };
  strategy: Strategy;
  scheduler: { kind: SchedulerKind; seed: number; params: Record<string, number> | null };
  objectives: { w_time: number; w_energy: number; w_cost: number; deadline: number | null };
}

export interface PlanSummary {
  plan_id: string;
  tasks: number;
  workflow: string;
  scheduler: string;
  strategy: string;
}

export interface RunEvent {
  run_id: string;
  task: string;
  status: TaskStatus;
  timestamp: number;
  detail: string | null;
}

export interface GanttRow {
  task: string;
  node: string;
  start: number;
  finish: number;
  transfer_in: number;
}

export interface BarRow {
  algorithm: string;
  time: number;
  energy: number;
  cost: number;
}

export interface Report {
  plan_id: string;
  run_id: string | null;
  bar: { rows: BarRow[] } | null;
  pie: Record<string, number>;
  line: Array<{ task: string; simulated: number; real: number | null }>;
  gantt: GanttRow[];
  deadline_verdict: "feasible" | "infeasible" | "no-deadline";
}

export interface ApiError {
  error: { code: string; message: string };
}
