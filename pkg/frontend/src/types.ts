/** Shapes the service sends, with runtime guards for the ones we consume. */

export type Mode = "triadic" | "family";

export interface Question {
  conditions: string[];
  premise: string[];
  conclusion: string[];
  new_attributes: string[];
  text: string;
}

export interface SessionView {
  id: string;
  status: string;
  mode: Mode;
  variant: string;
  order: string;
  attributes: string[];
  conditions: string[];
  created: string;
  updated: string;
  answered: number;
  node_index: number;
  schedule_size: number;
  question: Question | null;
  done: boolean;
}

export interface LatticeNode {
  id: number;
  intent: string[];
  extent: string[];
  label: string[];
  universe: boolean;
}

export interface Lattice {
  nodes: LatticeNode[];
  edges: [number, number][];
}

export interface TriadicCounterexample {
  name: string;
  // [attribute, condition] pairs
  table: [string, string][];
}

export interface FamilyCounterexample {
  name: string;
  expert: string;
  attributes: string[];
}

export interface AnswerPayload {
  holds_for: string[];
  counterexample?: TriadicCounterexample | FamilyCounterexample;
}

export interface CreateSessionPayload {
  mode?: Mode;
  attributes: string[];
  conditions: string[];
  variant?: string;
  order?: string;
}

function isStringArray(x: unknown): x is string[] {
  return Array.isArray(x) && x.every((v) => typeof v === "string");
}

function isRecord(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

export function asQuestion(x: unknown): Question | null {
  if (x === null) return null;
  if (!isRecord(x)) throw new Error("malformed question payload");
  const q = x;
  if (!isStringArray(q.conditions) || !isStringArray(q.premise) ||
      !isStringArray(q.conclusion) || !isStringArray(q.new_attributes) ||
      typeof q.text !== "string") {
    throw new Error("malformed question payload");
  }
  return q as unknown as Question;
}

export function asSessionView(x: unknown): SessionView {
  if (!isRecord(x)) throw new Error("malformed session payload");
  if (typeof x.id !== "string" || typeof x.status !== "string" ||
      (x.mode !== "triadic" && x.mode !== "family") ||
      !isStringArray(x.attributes) || !isStringArray(x.conditions) ||
      typeof x.answered !== "number" || typeof x.done !== "boolean") {
    throw new Error("malformed session payload");
  }
  asQuestion(x.question ?? null);
  return x as unknown as SessionView;
}

export function asLattice(x: unknown): Lattice {
  if (!isRecord(x) || !Array.isArray(x.nodes) || !Array.isArray(x.edges)) {
    throw new Error("malformed lattice payload");
  }
  for (const n of x.nodes) {
    if (!isRecord(n) || typeof n.id !== "number" || !isStringArray(n.intent) ||
        !isStringArray(n.extent) || !isStringArray(n.label) ||
        typeof n.universe !== "boolean") {
      throw new Error("malformed lattice payload");
    }
  }
  for (const e of x.edges) {
    if (!Array.isArray(e) || e.length !== 2 ||
        typeof e[0] !== "number" || typeof e[1] !== "number") {
      throw new Error("malformed lattice payload");
    }
  }
  return x as unknown as Lattice;
}
