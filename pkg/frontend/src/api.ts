import { AnswerPayload, CreateSessionPayload, Lattice, SessionView,
         asLattice, asSessionView, asQuestion, Question } from "./types.js";

/** Non-2xx responses carry {"error": code, "reason": text}. */
export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string,
              readonly reason: string) {
    super(`${code}: ${reason}`);
  }
}

async function raiseFor(res: Response): Promise<never> {
  let code = "unknown";
  let reason = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (body && typeof body.error === "string") code = body.error;
    if (body && typeof body.reason === "string") reason = body.reason;
  } catch {
    // not JSON; keep the status line
  }
  throw new ApiError(res.status, code, reason);
}

export class Api {
  constructor(readonly base: string = "") {}

  private async json(path: string, init?: RequestInit): Promise<unknown> {
    const res = await fetch(this.base + path, init);
    if (!res.ok) await raiseFor(res);
    return res.json();
  }

  async createSession(payload: CreateSessionPayload): Promise<SessionView> {
    return asSessionView(await this.json("/api/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    }));
  }

  async getSession(id: string): Promise<SessionView> {
    return asSessionView(await this.json(`/api/sessions/${id}`));
  }

  async getQuestion(id: string): Promise<Question | null> {
    const body = await this.json(`/api/sessions/${id}/question`);
    return asQuestion((body as { question: unknown }).question ?? null);
  }

  async postAnswer(id: string, payload: AnswerPayload): Promise<SessionView> {
    return asSessionView(await this.json(`/api/sessions/${id}/answer`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    }));
  }

  async getLattice(id: string): Promise<Lattice> {
    return asLattice(await this.json(`/api/sessions/${id}/lattice`));
  }

  async getTranscript(id: string): Promise<string> {
    const res = await fetch(`${this.base}/api/sessions/${id}/transcript`);
    if (!res.ok) await raiseFor(res);
    return res.text();
  }

  async getExport(id: string): Promise<unknown> {
    return this.json(`/api/sessions/${id}/export`);
  }
}
