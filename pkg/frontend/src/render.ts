import { Question, SessionView } from "./types.js";
import { Rejection } from "./validate.js";

/** Every view is a plain HTML string; app.ts owns the DOM. */

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderError(code: string, reason: string,
                            local = false): string {
  const origin = local ? "caught before sending" : "server said";
  return `<div class="banner error" role="alert">` +
    `<strong>${esc(code)}</strong> (${origin}): ${esc(reason)}</div>`;
}

export function renderNotice(text: string): string {
  return `<div class="banner notice">${esc(text)}</div>`;
}

export function renderRejection(rej: Rejection, local: boolean): string {
  return renderError(rej.reason, rej.detail, local);
}

export function renderHome(recent: string[]): string {
  const rows = recent.map((id) =>
    `<li><a href="#/s/${encodeURIComponent(id)}"><code>${esc(id)}</code></a>` +
    ` <button type="button" class="forget" data-id="${esc(id)}">forget</button></li>`)
    .join("");
  return `
<section class="home">
  <h1>triex</h1>
  <p>Start an exploration session. Attributes and conditions are comma
  separated; the expert (you) will be asked one implication at a time.</p>
  <form id="create">
    <label>mode
      <select name="mode">
        <option value="triadic" selected>triadic</option>
        <option value="family">family</option>
      </select>
    </label>
    <label>attributes <input name="attributes" required placeholder="a, b"></label>
    <label>conditions <input name="conditions" required placeholder="d1, d2"></label>
    <label>variant
      <select name="variant">
        <option value="record-partial-holds" selected>record-partial-holds</option>
        <option value="only-full-holds">only-full-holds</option>
      </select>
    </label>
    <label>order
      <select name="order">
        <option value="lex" selected>lex</option>
        <option value="revlex">revlex</option>
      </select>
    </label>
    <button type="submit">create</button>
  </form>
  <div id="feedback"></div>
  <h2>recent sessions</h2>
  ${recent.length > 0 ? `<ul class="sessions">${rows}</ul>`
                      : "<p>none yet</p>"}
</section>`;
}

function questionForm(view: SessionView, q: Question): string {
  const holds = view.conditions.filter((c) => q.conditions.includes(c));
  const boxes = holds.map((c) =>
    `<label class="holds"><input type="checkbox" name="holds" value="${esc(c)}" checked> ` +
    `holds under <code>${esc(c)}</code></label>`).join("\n");
  let cex: string;
  if (view.mode === "triadic") {
    const rows = view.conditions.map((c) =>
      `<label>attributes under <code>${esc(c)}</code> ` +
      `<input name="cex-under-${esc(c)}" placeholder="comma separated"></label>`)
      .join("\n");
    cex = `
    <fieldset id="counterexample">
      <legend>counterexample (required once any box above is unchecked)</legend>
      <label>object name <input name="cex-name"></label>
      ${rows}
    </fieldset>`;
  } else {
    const experts = q.conditions.map((c) =>
      `<option value="${esc(c)}">${esc(c)}</option>`).join("");
    cex = `
    <fieldset id="counterexample">
      <legend>counterexample (required once any box above is unchecked)</legend>
      <label>object name <input name="cex-name"></label>
      <label>rejecting expert <select name="cex-expert">${experts}</select></label>
      <label>its attributes <input name="cex-attributes" placeholder="comma separated"></label>
    </fieldset>`;
  }
  return `
  <form id="answer">
    <p class="question"><code>${esc(q.text)}</code></p>
    ${boxes}
    ${cex}
    <button type="submit">submit answer</button>
  </form>`;
}

export function renderSession(view: SessionView): string {
  const head = `
  <header>
    <a href="#/">&larr; all sessions</a>
    <h1>session <code>${esc(view.id)}</code></h1>
    <p class="meta">${esc(view.mode)}, ${esc(view.variant)}, ${esc(view.order)}
    &middot; answered ${view.answered}
    &middot; node ${view.node_index + 1}/${view.schedule_size}
    &middot; status <strong>${esc(view.status)}</strong></p>
    <nav>
      <button type="button" id="show-lattice">lattice</button>
      <button type="button" id="show-transcript">transcript</button>
      <a href="/api/sessions/${encodeURIComponent(view.id)}/export" download>export</a>
    </nav>
  </header>
  <div id="feedback"></div>`;
  let body: string;
  if (view.status === "inconsistent") {
    body = renderError("inconsistent",
      "a counterexample contradicted an earlier answer; " +
      "this session is closed, see the transcript and export", false);
  } else if (view.done || view.question === null) {
    body = `<p class="done">Exploration finished after ${view.answered}
    answers. The implication lattice below is complete for this domain.</p>
    <div id="artifact"></div>`;
    return `<section class="session">${head}${body}</section>`;
  } else {
    body = questionForm(view, view.question);
  }
  return `<section class="session">${head}${body}<div id="artifact"></div></section>`;
}

// the transcript is CSV with double-quote escaping
export function parseCsvLine(line: string): string[] {
  const out: string[] = [];
  let field = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"' && line[i + 1] === '"') { field += '"'; i++; }
      else if (ch === '"') { quoted = false; }
      else { field += ch; }
    } else if (ch === '"' && field === "") {
      quoted = true;
    } else if (ch === ",") {
      out.push(field); field = "";
    } else {
      field += ch;
    }
  }
  out.push(field);
  return out;
}

export function renderTranscript(csv: string): string {
  const lines = csv.trimEnd().split("\n");
  if (lines.length === 0 || lines[0] === "") return "<p>no answers yet</p>";
  const cells = lines.map(parseCsvLine);
  const head = cells[0]!.map((h) => `<th>${esc(h)}</th>`).join("");
  const body = cells.slice(1).map((row) =>
    `<tr>${row.map((c) => `<td>${esc(c)}</td>`).join("")}</tr>`).join("\n");
  return `<table class="transcript"><thead><tr>${head}</tr></thead>` +
    `<tbody>${body}</tbody></table>`;
}
