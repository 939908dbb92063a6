import { Lattice, LatticeNode } from "./types.js";

/** Layered drawing: one row per intent cardinality, largest at the bottom.
 *
 * Node order inside a row follows node id, which the service already emits
 * in enumeration order, so drawings are stable across reloads. Box heights
 * grow with the number of label lines; a row is as tall as its tallest box.
 */

export interface PlacedNode {
  node: LatticeNode;
  x: number;
  y: number;
  h: number;
}

export interface Layout {
  width: number;
  height: number;
  placed: PlacedNode[];
  edges: { from: PlacedNode; to: PlacedNode }[];
}

const BOX_W = 190;
const GAP_X = 30;
const GAP_Y = 56;
const MARGIN = 24;
const LINE_H = 14;

export function labelLines(n: LatticeNode): string[] {
  return n.universe ? [...n.label, "all implications"] : n.label;
}

function boxHeight(n: LatticeNode): number {
  return 28 + Math.max(1, labelLines(n).length) * LINE_H + 6;
}

export function layoutLattice(lat: Lattice): Layout {
  const sizes = [...new Set(lat.nodes.map((n) => n.intent.length))];
  sizes.sort((a, b) => b - a);                  // bottom row first
  const rowOf = new Map(sizes.map((s, i) => [s, i]));
  const rows: LatticeNode[][] = sizes.map(() => []);
  for (const n of lat.nodes) rows[rowOf.get(n.intent.length)!]!.push(n);

  const rowHeights = rows.map((r) => Math.max(...r.map(boxHeight)));
  const widest = Math.max(1, ...rows.map((r) => r.length));
  const width = MARGIN * 2 + widest * BOX_W + (widest - 1) * GAP_X;
  const height = MARGIN * 2 + rowHeights.reduce((a, b) => a + b, 0) +
    (rows.length - 1) * GAP_Y;

  const placed: PlacedNode[] = [];
  const byId = new Map<number, PlacedNode>();
  let bottom = height - MARGIN;
  rows.forEach((row, i) => {
    const rowH = rowHeights[i]!;
    const rowWidth = row.length * BOX_W + (row.length - 1) * GAP_X;
    const left = (width - rowWidth) / 2;
    const y = bottom - rowH;
    row.forEach((n, j) => {
      const p = { node: n, x: left + j * (BOX_W + GAP_X), y, h: boxHeight(n) };
      placed.push(p);
      byId.set(n.id, p);
    });
    bottom = y - GAP_Y;
  });

  const edges = lat.edges.map(([a, b]) => {
    const from = byId.get(a);
    const to = byId.get(b);
    if (from === undefined || to === undefined) {
      throw new Error(`edge [${a}, ${b}] references a missing node`);
    }
    return { from, to };
  });
  return { width, height, placed, edges };
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderLatticeSvg(lat: Lattice): string {
  const layout = layoutLattice(lat);
  const parts: string[] = [];
  parts.push(`<svg class="lattice" viewBox="0 0 ${layout.width} ${layout.height}" ` +
    `xmlns="http://www.w3.org/2000/svg" role="img">`);
  for (const e of layout.edges) {
    // covers point upward, from larger intents to smaller ones
    const x1 = e.from.x + BOX_W / 2;
    const y1 = e.from.y;
    const x2 = e.to.x + BOX_W / 2;
    const y2 = e.to.y + e.to.h;
    parts.push(`<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}"/>`);
  }
  for (const p of layout.placed) {
    const title = p.node.intent.length > 0
      ? `{${p.node.intent.join(", ")}}` : "{}";
    parts.push(`<g class="node${p.node.universe ? " universe" : ""}">`);
    parts.push(`<rect x="${p.x}" y="${p.y}" width="${BOX_W}" height="${p.h}" rx="6"/>`);
    parts.push(`<text class="intent" x="${p.x + BOX_W / 2}" y="${p.y + 18}" ` +
      `text-anchor="middle">${esc(title)}</text>`);
    labelLines(p.node).forEach((line, i) => {
      parts.push(`<text class="label" x="${p.x + BOX_W / 2}" ` +
        `y="${p.y + 34 + i * LINE_H}" text-anchor="middle">${esc(line)}</text>`);
    });
    parts.push("</g>");
  }
  parts.push("</svg>");
  return parts.join("\n");
}
