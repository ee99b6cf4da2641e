/**
 * Four-step plan wizard state machine.
 *
 * Step 1 chooses the workflow (template parameters or a DAX upload), step 2
 * binds tasks to built-in computing tasks, step 3 sizes the environment,
 * step 4 picks strategy, scheduler, objectives and deadline. A step is
 * enterable only when every prior step validates; the finished state
 * serializes to exactly one control-plane plan request.
 */

import type {
  BindingKind,
  PlanRequest,
  SchedulerKind,
  SizeClass,
  Strategy,
  Tier,
  WorkflowRequest,
} from "./types.js";

export interface WorkflowStep {
  source: "montage" | "pattern" | "dax";
  width: number;
  lengthProfile: number;
  dataProfile: number;
  pattern: "sequential" | "parallel" | "hybrid";
  tasks: number;
  seed: number;
  daxXml: string;
}

export interface BindingsStep {
  defaultKind: BindingKind | null;
  perTask: Record<string, { kind: BindingKind; params?: Record<string, number> }>;
}

export interface EnvironmentStep {
  sizes: Record<Tier, SizeClass>;
  counts: Record<Tier, number>;
}

export interface StrategyStep {
  strategy: Strategy;
  scheduler: SchedulerKind;
  seed: number;
  params: Record<string, number> | null;
  wTime: number;
  wEnergy: number;
  wCost: number;
  deadline: number | null;
}

export interface WizardState {
  workflow: WorkflowStep | null;
  bindings: BindingsStep | null;
  environment: EnvironmentStep | null;
  strategy: StrategyStep | null;
}

export const HEURISTIC_SCHEDULERS: readonly SchedulerKind[] = [
  "fcfs",
  "round-robin",
  "min-min",
  "max-min",
];

export function emptyWizard(): WizardState {
  return { workflow: null, bindings: null, environment: null, strategy: null };
}

export function defaultWorkflowStep(): WorkflowStep {
  return {
    source: "montage",
    width: 5,
    lengthProfile: 1,
    dataProfile: 1,
    pattern: "hybrid",
    tasks: 10,
    seed: 0,
    daxXml: "",
  };
}

export function defaultBindingsStep(): BindingsStep {
  return { defaultKind: "pi-calculation", perTask: {} };
}

export function defaultEnvironmentStep(): EnvironmentStep {
  return {
    sizes: { device: "medium", edge: "medium", cloud: "medium" },
    counts: { device: 2, edge: 2, cloud: 2 },
  };
}

export function defaultStrategyStep(): StrategyStep {
  return {
    strategy: "energy-optimal",
    scheduler: "ga",
    seed: 42,
    params: null,
    wTime: 1,
    wEnergy: 0,
    wCost: 0,
    deadline: null,
  };
}

export function validateWorkflowStep(step: WorkflowStep | null): string[] {
  if (step === null) return ["choose a workflow"];
  const errors: string[] = [];
  if (step.source === "montage") {
    if (!Number.isInteger(step.width) || step.width < 2) {
      errors.push("montage width must be an integer >= 2");
    }
    if (step.lengthProfile <= 0 || step.dataProfile <= 0) {
      errors.push("profiles must be > 0");
    }
  } else if (step.source === "pattern") {
    const minimum = step.pattern === "parallel" ? 3 : 1;
    if (!Number.isInteger(step.tasks) || step.tasks < minimum) {
      errors.push(`${step.pattern} pattern needs at least ${minimum} tasks`);
    }
  } else if (step.source === "dax") {
    if (!step.daxXml.trim()) errors.push("upload a DAX file");
  }
  return errors;
}

export function validateBindingsStep(step: BindingsStep | null): string[] {
  if (step === null) return ["choose task bindings"];
  if (step.defaultKind === null && Object.keys(step.perTask).length === 0) {
    return ["bind tasks or pick a default computing task"];
  }
  return [];
}

export function validateEnvironmentStep(step: EnvironmentStep | null): string[] {
  if (step === null) return ["configure the environment"];
  const errors: string[] = [];
  for (const tier of ["device", "edge", "cloud"] as const) {
    const count = step.counts[tier];
    if (!Number.isInteger(count) || count < 1) {
      errors.push(`${tier} count must be an integer >= 1`);
    }
  }
  return errors;
}

export function validateStrategyStep(step: StrategyStep | null): string[] {
  if (step === null) return ["choose strategy and objectives"];
  const errors: string[] = [];
  const weights = [step.wTime, step.wEnergy, step.wCost];
  if (weights.some((w) => w < 0)) errors.push("objective weights must be >= 0");
  const total = step.wTime + step.wEnergy + step.wCost;
  if (Math.abs(total - 1) > 1e-9) errors.push("objective weights must sum to 1");
  if (!weights.some((w) => w > 0)) errors.push("at least one weight must be > 0");
  if (HEURISTIC_SCHEDULERS.includes(step.scheduler) && step.wTime !== 1) {
    errors.push(`${step.scheduler} only supports time optimization (w_time must be 1)`);
  }
  if (step.deadline !== null && !(step.deadline > 0)) {
    errors.push("deadline must be > 0 seconds");
  }
  return errors;
}

const STEP_VALIDATORS = [
  (s: WizardState) => validateWorkflowStep(s.workflow),
  (s: WizardState) => validateBindingsStep(s.bindings),
  (s: WizardState) => validateEnvironmentStep(s.environment),
  (s: WizardState) => validateStrategyStep(s.strategy),
] as const;

export function stepErrors(state: WizardState, step: 1 | 2 | 3 | 4): string[] {
  return STEP_VALIDATORS[step - 1]!(state);
}

/** A step is enterable only when every prior step validates. */
export function stepReachable(state: WizardState, step: 1 | 2 | 3 | 4): boolean {
  for (let prior = 1; prior < step; prior++) {
    if (STEP_VALIDATORS[prior - 1]!(state).length > 0) return false;
  }
  return true;
}

export function wizardComplete(state: WizardState): boolean {
  return ([1, 2, 3, 4] as const).every((step) => stepErrors(state, step).length === 0);
}

function workflowRequest(step: WorkflowStep): WorkflowRequest {
  if (step.source === "montage") {
    return {
      kind: "montage",
      width: step.width,
      length_profile: step.lengthProfile,
      data_profile: step.dataProfile,
    };
  }
  if (step.source === "pattern") {
    return { kind: "pattern", pattern: step.pattern, tasks: step.tasks, seed: step.seed };
  }
  return { kind: "dax", xml: step.daxXml };
}

/** Serialize a finished wizard into the control-plane plan request. */
export function toPlanRequest(state: WizardState): PlanRequest {
  if (!wizardComplete(state)) {
    throw new Error("wizard is incomplete: " + JSON.stringify(allErrors(state)));
  }
  const bindings = state.bindings!;
  const request: PlanRequest = {
    workflow: workflowRequest(state.workflow!),
    bindings: {
      ...(bindings.defaultKind !== null ? { default: bindings.defaultKind } : {}),
      ...(Object.keys(bindings.perTask).length > 0 ? { tasks: bindings.perTask } : {}),
    },
    environment: {
      sizes: { ...state.environment!.sizes },
      counts: { ...state.environment!.counts },
    },
    strategy: state.strategy!.strategy,
    scheduler: {
      kind: state.strategy!.scheduler,
      seed: state.strategy!.seed,
      params: state.strategy!.params,
    },
    objectives: {
      w_time: state.strategy!.wTime,
      w_energy: state.strategy!.wEnergy,
      w_cost: state.strategy!.wCost,
      deadline: state.strategy!.deadline,
    },
  };
  return request;
}

export function allErrors(state: WizardState): Record<string, string[]> {
  return {
    workflow: stepErrors(state, 1),
    bindings: stepErrors(state, 2),
    environment: stepErrors(state, 3),
    strategy: stepErrors(state, 4),
  };
}
