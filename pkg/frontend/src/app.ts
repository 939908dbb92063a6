import { Api, ApiError } from "./api.js";
import { renderLatticeSvg } from "./lattice.js";
import { renderError, renderHome, renderNotice, renderSession,
         renderTranscript } from "./render.js";
import { KeyValueStore, forget, recentSessions, remember } from "./store.js";
import { AnswerPayload, SessionView } from "./types.js";
import { checkAnswer } from "./validate.js";

/** Hash-routed single page: #/ is the session list, #/s/<id> one session. */

const api = new Api("");

function splitList(raw: string): string[] {
  return raw.split(",").map((s) => s.trim()).filter((s) => s.length > 0);
}

function feedback(root: HTMLElement, html: string): void {
  const slot = root.querySelector("#feedback");
  if (slot !== null) slot.innerHTML = html;
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return renderError(err.code, err.reason);
  return renderError("unreachable", String(err));
}

async function showLattice(root: HTMLElement, id: string): Promise<void> {
  const slot = root.querySelector("#artifact");
  if (slot === null) return;
  try {
    slot.innerHTML = renderLatticeSvg(await api.getLattice(id));
  } catch (err) {
    slot.innerHTML = describe(err);
  }
}

async function showTranscript(root: HTMLElement, id: string): Promise<void> {
  const slot = root.querySelector("#artifact");
  if (slot === null) return;
  try {
    slot.innerHTML = renderTranscript(await api.getTranscript(id));
  } catch (err) {
    slot.innerHTML = describe(err);
  }
}

function collectAnswer(view: SessionView, form: HTMLFormElement):
    AnswerPayload {
  const data = new FormData(form);
  const holds = data.getAll("holds").map(String);
  const asked = view.question === null ? [] : view.question.conditions;
  if (holds.length === asked.length) return { holds_for: holds };
  const name = String(data.get("cex-name") ?? "").trim();
  if (name === "") return { holds_for: holds };  // rejected client-side
  if (view.mode === "triadic") {
    const table: [string, string][] = [];
    for (const c of view.conditions) {
      for (const m of splitList(String(data.get(`cex-under-${c}`) ?? ""))) {
        table.push([m, c]);
      }
    }
    return { holds_for: holds, counterexample: { name, table } };
  }
  return {
    holds_for: holds,
    counterexample: {
      name,
      expert: String(data.get("cex-expert") ?? ""),
      attributes: splitList(String(data.get("cex-attributes") ?? "")),
    },
  };
}

export function init(root: HTMLElement, storage: KeyValueStore): void {
  let view: SessionView | null = null;

  async function route(): Promise<void> {
    const hash = location.hash || "#/";
    const match = /^#\/s\/(.+)$/.exec(hash);
    if (match === null) {
      view = null;
      root.innerHTML = renderHome(recentSessions(storage));
      return;
    }
    const id = decodeURIComponent(match[1]!);
    try {
      view = await api.getSession(id);
      remember(storage, id);
      root.innerHTML = renderSession(view);
      if (view.done) await showLattice(root, id);
    } catch (err) {
      view = null;
      root.innerHTML = renderHome(recentSessions(storage));
      feedback(root, describe(err));
    }
  }

  root.addEventListener("click", (ev) => {
    const target = ev.target;
    if (!(target instanceof HTMLElement)) return;
    if (target.classList.contains("forget")) {
      forget(storage, target.dataset.id ?? "");
      void route();
    } else if (target.id === "show-lattice" && view !== null) {
      void showLattice(root, view.id);
    } else if (target.id === "show-transcript" && view !== null) {
      void showTranscript(root, view.id);
    }
  });

  root.addEventListener("submit", (ev) => {
    const form = ev.target;
    if (!(form instanceof HTMLFormElement)) return;
    ev.preventDefault();
    if (form.id === "create") {
      const data = new FormData(form);
      void api.createSession({
        mode: data.get("mode") === "family" ? "family" : "triadic",
        attributes: splitList(String(data.get("attributes") ?? "")),
        conditions: splitList(String(data.get("conditions") ?? "")),
        variant: String(data.get("variant") ?? "record-partial-holds"),
        order: String(data.get("order") ?? "lex"),
      }).then((created) => {
        remember(storage, created.id);
        location.hash = `#/s/${encodeURIComponent(created.id)}`;
      }).catch((err) => feedback(root, describe(err)));
    } else if (form.id === "answer" && view !== null) {
      const current = view;
      const payload = collectAnswer(current, form);
      if (current.question !== null) {
        const rejected = checkAnswer(current, current.question, payload);
        if (rejected !== null) {
          feedback(root, renderError(rejected.reason, rejected.detail, true));
          return;
        }
      }
      void api.postAnswer(current.id, payload).then((next) => {
        view = next;
        root.innerHTML = renderSession(next);
        if (next.done) {
          feedback(root, renderNotice("exploration finished"));
          void showLattice(root, next.id);
        }
      }).catch((err) => feedback(root, describe(err)));
    }
  });

  addEventListener("hashchange", () => void route());
  void route();
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root !== null) init(root, localStorage);
}
