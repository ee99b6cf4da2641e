/** Chart renderers: stable snapshots from golden report documents and a
 * visible error for schema mismatches. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { renderBar, renderGantt, renderLine, renderPie, renderReport } from "../src/charts.js";

const HERE = dirname(fileURLToPath(import.meta.url));

function fixture(name: string): unknown {
  return JSON.parse(readFileSync(join(HERE, "..", "fixtures", name), "utf8"));
}

describe("full report rendering", () => {
  it("renders all four charts from the golden report", () => {
    const result = renderReport(fixture("report.golden.json"));
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.charts.bar).toMatchSnapshot("bar");
    expect(result.charts.pie).toMatchSnapshot("pie");
    expect(result.charts.line).toMatchSnapshot("line");
    expect(result.charts.gantt).toMatchSnapshot("gantt");
    expect(result.charts.verdict).toBe("feasible");
  });

  it("renders the simulated-only report without a real series or bar chart", () => {
    const result = renderReport(fixture("report-simulated-only.golden.json"));
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.charts.bar).toBeNull();
    expect(result.charts.line).not.toContain(">real<");
    expect(result.charts.line).toContain(">simulated<");
    expect(result.charts.pie).toMatchSnapshot("pie-simulated-only");
    expect(result.charts.line).toMatchSnapshot("line-simulated-only");
    expect(result.charts.gantt).toMatchSnapshot("gantt-simulated-only");
  });

  it("is a pure function: identical input, identical output", () => {
    const doc = fixture("report.golden.json");
    const first = renderReport(doc);
    const second = renderReport(doc);
    expect(second).toEqual(first);
  });

  it("rejects schema mismatches with a visible error, never silently", () => {
    const broken = fixture("report.golden.json") as Record<string, unknown>;
    delete broken["pie"];
    const result = renderReport(broken);
    expect(result.ok).toBe(false);
    if (result.ok) return;
    expect(result.error).toContain("pie");
    expect(renderReport(null).ok).toBe(false);
    expect(renderReport("nope").ok).toBe(false);
  });
});

describe("individual renderers", () => {
  it("pie segments reflect the task shares", () => {
    const svg = renderPie({ "edge-00": 2, "device-00": 1, "cloud-00": 1 });
    expect(svg).toContain("edge-00: 2 (50.0%)");
    expect(svg).toContain("device-00: 1 (25.0%)");
    expect(svg).toContain("cloud-00: 1 (25.0%)");
  });

  it("single-node pie renders a full circle", () => {
    const svg = renderPie({ "edge-00": 7 });
    expect(svg).toContain("<circle");
    expect(svg).toContain("edge-00: 7 (100.0%)");
  });

  it("gantt groups rows by node", () => {
    const svg = renderGantt([
      { task: "a", node: "edge-00", start: 0, finish: 1, transfer_in: 0 },
      { task: "b", node: "edge-01", start: 1, finish: 2, transfer_in: 0.5 },
      { task: "c", node: "edge-00", start: 1, finish: 3, transfer_in: 0 },
    ]);
    expect(svg).toContain(">edge-00<");
    expect(svg).toContain(">edge-01<");
    expect((svg.match(/<rect/g) ?? []).length).toBe(3);
  });

  it("bar chart carries one bar per algorithm and panel", () => {
    const svg = renderBar({
      rows: [
        { algorithm: "fcfs", time: 2, energy: 1, cost: 0.5 },
        { algorithm: "ga", time: 1, energy: 0.8, cost: 0.4 },
      ],
    });
    expect((svg.match(/<rect/g) ?? []).length).toBe(6); // 2 algorithms x 3 panels
    expect(svg).toContain(">fcfs<");
    expect(svg).toContain(">ga<");
  });

  it("line chart handles empty and single-task payloads", () => {
    expect(renderLine([])).toContain("no tasks");
    const single = renderLine([{ task: "t0", simulated: 1.5, real: null }]);
    expect(single).toContain("simulated");
    expect(single).not.toContain(">real<");
  });
});
