/** Shared test fixtures. */

import {
  defaultBindingsStep,
  defaultEnvironmentStep,
  defaultStrategyStep,
  defaultWorkflowStep,
  type WizardState,
} from "../src/wizard.js";

export function goldenWizard(): WizardState {
  return {
    workflow: defaultWorkflowStep(),
    bindings: defaultBindingsStep(),
    environment: defaultEnvironmentStep(),
    strategy: defaultStrategyStep(),
  };
}

/** Rebuild an object tree with reversed key insertion order (shallow copies
 * all the way down) to probe serializer key-order independence. */
export function reverseKeyOrder(value: unknown): unknown {
  if (Array.isArray(value)) return value.map(reverseKeyOrder);
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value).reverse()) {
      out[key] = reverseKeyOrder((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  return value;
}
