/**
 * Canonical JSON serialization: recursively sorted object keys, two-space
 * indent, trailing newline. Matches the wire format the control plane
 * persists, so documents can be compared byte for byte.
 */

export function canonicalStringify(value: unknown): string {
  return render(value, "") + "\n";
}

function render(value: unknown, indent: string): string {
  if (value === null || typeof value === "number" || typeof value === "boolean") {
    return JSON.stringify(value);
  }
  if (typeof value === "string") {
    return JSON.stringify(value);
  }
  const inner = indent + "  ";
  if (Array.isArray(value)) {
    if (value.length === 0) return "[]";
    const items = value.map((item) => inner + render(item, inner));
    return "[\n" + items.join(",\n") + "\n" + indent + "]";
  }
  if (typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>).sort(([a], [b]) =>
      a < b ? -1 : a > b ? 1 : 0,
    );
    if (entries.length === 0) return "{}";
    const items = entries.map(
      ([key, item]) => inner + JSON.stringify(key) + ": " + render(item, inner),
    );
    return "{\n" + items.join(",\n") + "\n" + indent + "}";
  }
  throw new Error(`cannot serialize value of type ${typeof value}`);
}
