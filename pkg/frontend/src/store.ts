/** The recently visited sessions, kept in whatever Storage we are handed. */

const KEY = "triex.sessions";
const LIMIT = 20;

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export function recentSessions(store: KeyValueStore): string[] {
  const raw = store.getItem(KEY);
  if (raw === null) return [];
  try {
    const parsed = JSON.parse(raw);
    if (Array.isArray(parsed) && parsed.every((x) => typeof x === "string")) {
      return parsed;
    }
  } catch {
    // fall through; a broken entry just means an empty list
  }
  return [];
}

export function remember(store: KeyValueStore, id: string): void {
  const ids = recentSessions(store).filter((x) => x !== id);
  ids.unshift(id);
  store.setItem(KEY, JSON.stringify(ids.slice(0, LIMIT)));
}

export function forget(store: KeyValueStore, id: string): void {
  const ids = recentSessions(store).filter((x) => x !== id);
  store.setItem(KEY, JSON.stringify(ids));
}
