/**
 * The four report charts as pure functions of the report document: every
 * renderer maps the payload to a standalone SVG string (layout math only;
 * metric values come from the server verbatim). A schema mismatch renders a
 * visible error panel instead of a chart, never a silent blank.
 */

import { z } from "zod";

import type { Report } from "./types.js";

const BarRowSchema = z.object({
  algorithm: z.string(),
  time: z.number(),
  energy: z.number(),
  cost: z.number(),
});

export const ReportSchema = z.object({
  plan_id: z.string(),
  run_id: z.string().nullable(),
  bar: z.object({ rows: z.array(BarRowSchema) }).nullable(),
  pie: z.record(z.string(), z.number().int().nonnegative()),
  line: z.array(
    z.object({ task: z.string(), simulated: z.number(), real: z.number().nullable() }),
  ),
  gantt: z.array(
    z.object({
      task: z.string(),
      node: z.string(),
      start: z.number(),
      finish: z.number(),
      transfer_in: z.number(),
    }),
  ),
  deadline_verdict: z.enum(["feasible", "infeasible", "no-deadline"]),
});

const WIDTH = 640;
const PALETTE = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948"];

function svgOpen(height: number, title: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${height}" ` +
    `font-family="sans-serif" font-size="11" role="img" aria-label="${title}">`
  );
}

function fmt(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1000) return value.toFixed(0);
  if (magnitude >= 1) return value.toFixed(2);
  return value.toPrecision(3);
}

/** Bar chart: one panel per objective, one bar per algorithm. */
export function renderBar(bar: NonNullable<Report["bar"]>): string {
  const rows = bar.rows;
  const panels: Array<{ label: string; values: number[] }> = [
    { label: "time (s)", values: rows.map((r) => r.time) },
    { label: "energy (J)", values: rows.map((r) => r.energy) },
    { label: "cost ($)", values: rows.map((r) => r.cost) },
  ];
  const panelHeight = 120;
  const height = panels.length * panelHeight + 30;
  const parts = [svgOpen(height, "algorithm comparison")];
  panels.forEach((panel, p) => {
    const top = p * panelHeight + 20;
    const max = Math.max(...panel.values, 1e-12);
    parts.push(`<text x="8" y="${top - 6}" font-weight="bold">${panel.label}</text>`);
    const slot = (WIDTH - 120) / Math.max(rows.length, 1);
    panel.values.forEach((value, i) => {
      const barHeight = Math.round((value / max) * (panelHeight - 40) * 100) / 100;
      const x = 100 + i * slot;
      const y = top + (panelHeight - 40) - barHeight;
      parts.push(
        `<rect x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${(slot * 0.7).toFixed(1)}" ` +
          `height="${barHeight.toFixed(1)}" fill="${PALETTE[i % PALETTE.length]}"/>`,
        `<text x="${(x + slot * 0.35).toFixed(1)}" y="${(top + panelHeight - 26).toFixed(1)}" ` +
          `text-anchor="middle">${rows[i]!.algorithm}</text>`,
        `<text x="${(x + slot * 0.35).toFixed(1)}" y="${(y - 3).toFixed(1)}" ` +
          `text-anchor="middle">${fmt(value)}</text>`,
      );
    });
  });
  parts.push("</svg>");
  return parts.join("");
}

/** Pie chart: share of tasks per node. */
export function renderPie(pie: Report["pie"]): string {
  const entries = Object.entries(pie).sort(([a], [b]) => (a < b ? -1 : 1));
  const total = entries.reduce((acc, [, count]) => acc + count, 0);
  const height = 220;
  const parts = [svgOpen(height, "tasks per node")];
  const cx = 130;
  const cy = 110;
  const radius = 90;
  if (total === 0) {
    parts.push(`<text x="${cx}" y="${cy}">no tasks</text>`, "</svg>");
    return parts.join("");
  }
  let angle = -Math.PI / 2;
  entries.forEach(([node, count], i) => {
    const span = (count / total) * 2 * Math.PI;
    const x1 = cx + radius * Math.cos(angle);
    const y1 = cy + radius * Math.sin(angle);
    const x2 = cx + radius * Math.cos(angle + span);
    const y2 = cy + radius * Math.sin(angle + span);
    const large = span > Math.PI ? 1 : 0;
    const color = PALETTE[i % PALETTE.length];
    if (entries.length === 1) {
      parts.push(`<circle cx="${cx}" cy="${cy}" r="${radius}" fill="${color}"/>`);
    } else {
      parts.push(
        `<path d="M ${cx} ${cy} L ${x1.toFixed(2)} ${y1.toFixed(2)} ` +
          `A ${radius} ${radius} 0 ${large} 1 ${x2.toFixed(2)} ${y2.toFixed(2)} Z" fill="${color}"/>`,
      );
    }
    const share = ((100 * count) / total).toFixed(1);
    const ly = 30 + i * 18;
    parts.push(
      `<rect x="280" y="${ly - 10}" width="12" height="12" fill="${color}"/>`,
      `<text x="298" y="${ly}">${node}: ${count} (${share}%)</text>`,
    );
    angle += span;
  });
  parts.push("</svg>");
  return parts.join("");
}

/** Line chart: simulated vs real seconds per task; the real series is
 * omitted entirely when absent. */
export function renderLine(line: Report["line"]): string {
  const height = 220;
  const parts = [svgOpen(height, "simulated vs real task seconds")];
  if (line.length === 0) {
    parts.push('<text x="10" y="20">no tasks</text>', "</svg>");
    return parts.join("");
  }
  const hasReal = line.some((row) => row.real !== null);
  const values = line
    .map((row) => row.simulated)
    .concat(hasReal ? line.map((row) => row.real ?? 0) : []);
  const max = Math.max(...values, 1e-12);
  const x0 = 40;
  const plotWidth = WIDTH - x0 - 20;
  const y = (value: number) => 180 - (value / max) * 150;
  const x = (i: number) =>
    line.length === 1 ? x0 + plotWidth / 2 : x0 + (i / (line.length - 1)) * plotWidth;

  const seriesPath = (pick: (row: Report["line"][number]) => number) =>
    line.map((row, i) => `${x(i).toFixed(1)},${y(pick(row)).toFixed(1)}`).join(" ");

  parts.push(
    `<polyline points="${seriesPath((r) => r.simulated)}" fill="none" stroke="${PALETTE[0]}" stroke-width="2"/>`,
    `<text x="${x0}" y="205" fill="${PALETTE[0]}">simulated</text>`,
  );
  if (hasReal) {
    parts.push(
      `<polyline points="${seriesPath((r) => r.real ?? 0)}" fill="none" stroke="${PALETTE[1]}" stroke-width="2"/>`,
      `<text x="${x0 + 90}" y="205" fill="${PALETTE[1]}">real</text>`,
    );
  }
  line.forEach((row, i) => {
    parts.push(
      `<circle cx="${x(i).toFixed(1)}" cy="${y(row.simulated).toFixed(1)}" r="2.5" fill="${PALETTE[0]}"/>`,
    );
    if (i % Math.ceil(line.length / 12) === 0) {
      parts.push(
        `<text x="${x(i).toFixed(1)}" y="195" text-anchor="middle">${row.task}</text>`,
      );
    }
  });
  parts.push("</svg>");
  return parts.join("");
}

/** Gantt chart: one row per node, one bar per task interval. */
export function renderGantt(gantt: Report["gantt"]): string {
  const nodes = [...new Set(gantt.map((row) => row.node))].sort();
  const rowHeight = 26;
  const height = Math.max(nodes.length * rowHeight + 50, 80);
  const parts = [svgOpen(height, "execution gantt")];
  if (gantt.length === 0) {
    parts.push('<text x="10" y="20">no schedule</text>', "</svg>");
    return parts.join("");
  }
  const makespan = Math.max(...gantt.map((row) => row.finish), 1e-12);
  const x0 = 90;
  const plotWidth = WIDTH - x0 - 20;
  const x = (t: number) => x0 + (t / makespan) * plotWidth;
  nodes.forEach((node, i) => {
    const y = 20 + i * rowHeight;
    parts.push(
      `<text x="8" y="${y + 14}">${node}</text>`,
      `<line x1="${x0}" y1="${y + rowHeight - 4}" x2="${WIDTH - 20}" y2="${y + rowHeight - 4}" stroke="#ddd"/>`,
    );
  });
  const taskColor = new Map<string, string>();
  gantt.forEach((row) => {
    if (!taskColor.has(row.task)) {
      taskColor.set(row.task, PALETTE[taskColor.size % PALETTE.length]!);
    }
    const i = nodes.indexOf(row.node);
    const y = 20 + i * rowHeight;
    const left = x(row.start);
    const width = Math.max(x(row.finish) - left, 1);
    parts.push(
      `<rect x="${left.toFixed(1)}" y="${y}" width="${width.toFixed(1)}" height="16" ` +
        `fill="${taskColor.get(row.task)}"><title>${row.task}: ${fmt(row.start)}s to ${fmt(row.finish)}s</title></rect>`,
    );
  });
  parts.push(
    `<text x="${x0}" y="${height - 8}">0s</text>`,
    `<text x="${WIDTH - 20}" y="${height - 8}" text-anchor="end">${fmt(makespan)}s</text>`,
    "</svg>",
  );
  return parts.join("");
}

export interface RenderedReport {
  bar: string | null;
  pie: string;
  line: string;
  gantt: string;
  verdict: string;
}

export type RenderResult =
  | { ok: true; charts: RenderedReport }
  | { ok: false; error: string };

/** Validate and render the whole report; schema mismatches produce a
 * visible error, never a silent blank. */
export function renderReport(doc: unknown): RenderResult {
  const parsed = ReportSchema.safeParse(doc);
  if (!parsed.success) {
    const issues = parsed.error.issues
      .map((issue) => `${issue.path.join(".") || "<root>"}: ${issue.message}`)
      .join("; ");
    return { ok: false, error: `report document does not match the schema: ${issues}` };
  }
  const report = parsed.data as Report;
  return {
    ok: true,
    charts: {
      bar: report.bar === null ? null : renderBar(report.bar),
      pie: renderPie(report.pie),
      line: renderLine(report.line),
      gantt: renderGantt(report.gantt),
      verdict: report.deadline_verdict,
    },
  };
}
