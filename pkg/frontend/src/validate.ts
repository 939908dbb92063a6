import { AnswerPayload, Mode, Question } from "./types.js";

/** Pre-flight answer check, same rules and reason codes as the server.
 *
 * The server remains the authority; this only spares a round trip for the
 * common slips.
 */

export interface Rejection {
  reason: string;
  detail: string;
}

interface SessionShape {
  mode: Mode;
  attributes: string[];
  conditions: string[];
}

function respects(row: Set<string>, premise: string[], conclusion: string[]):
    boolean {
  if (!premise.every((m) => row.has(m))) return true;
  return conclusion.every((m) => row.has(m));
}

export function checkAnswer(session: SessionShape, question: Question,
                            answer: AnswerPayload): Rejection | null {
  const asked = new Set(question.conditions);
  const holds = new Set(answer.holds_for);
  const unknown = [...holds].filter((c) => !session.conditions.includes(c));
  if (unknown.length > 0) {
    unknown.sort();
    return { reason: "unknown-attribute",
             detail: `unknown condition '${unknown[0]}' in holds_for` };
  }
  const extra = [...holds].filter((c) => !asked.has(c));
  if (extra.length > 0) {
    extra.sort();
    return { reason: "contradicts-claim",
             detail: `condition '${extra[0]}' was not part of the question` };
  }
  const cex = answer.counterexample;
  if (holds.size === asked.size) {
    if (cex !== undefined) {
      return { reason: "contradicts-claim",
               detail: "counterexample given although the implication was fully accepted" };
    }
    return null;
  }
  if (cex === undefined) {
    return { reason: "missing-counterexample",
             detail: "rejected conditions require a counterexample" };
  }
  if (cex.name.length === 0) {
    // the server's payload model refuses empty names before the engine runs
    return { reason: "validation-error",
             detail: "the counterexample needs a name" };
  }
  if (session.mode === "triadic") {
    if (!("table" in cex)) {
      return { reason: "contradicts-claim",
               detail: "this session takes whole object rows" };
    }
    for (const [m, b] of cex.table) {
      if (!session.attributes.includes(m)) {
        return { reason: "unknown-attribute",
                 detail: `unknown attribute '${m}'` };
      }
      if (!session.conditions.includes(b)) {
        return { reason: "unknown-attribute",
                 detail: `unknown condition '${b}'` };
      }
    }
    const rows = new Map<string, Set<string>>(
      session.conditions.map((c) => [c, new Set<string>()]));
    for (const [m, b] of cex.table) rows.get(b)!.add(m);
    for (const c of answer.holds_for) {
      if (!respects(rows.get(c)!, question.premise, question.conclusion)) {
        return { reason: "contradicts-claim",
                 detail: `object '${cex.name}' violates the implication under '${c}', which the answer claims it holds for` };
      }
    }
    const rejected = question.conditions.filter((c) => !holds.has(c));
    if (rejected.every((c) =>
        respects(rows.get(c)!, question.premise, question.conclusion))) {
      return { reason: "no-violation",
               detail: `object '${cex.name}' does not violate the implication under any rejected condition` };
    }
    return null;
  }
  if (!("expert" in cex)) {
    return { reason: "contradicts-claim",
             detail: "this session takes per-expert counterexamples" };
  }
  if (!session.conditions.includes(cex.expert)) {
    return { reason: "unknown-attribute",
             detail: `unknown expert '${cex.expert}'` };
  }
  if (!asked.has(cex.expert)) {
    return { reason: "contradicts-claim",
             detail: `expert '${cex.expert}' was not part of the question` };
  }
  if (holds.has(cex.expert)) {
    return { reason: "contradicts-claim",
             detail: `the answer claims the implication holds for '${cex.expert}'` };
  }
  for (const m of cex.attributes) {
    if (!session.attributes.includes(m)) {
      return { reason: "unknown-attribute",
               detail: `unknown attribute '${m}'` };
    }
  }
  if (respects(new Set(cex.attributes), question.premise,
               question.conclusion)) {
    return { reason: "no-violation",
             detail: `object '${cex.name}' does not violate the implication` };
  }
  return null;
}
