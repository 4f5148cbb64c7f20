import { Fetcher, SuggestResponse } from './api.js';
import { debounce } from './debounce.js';

export const DEBOUNCE_MS = 150;
export const MIN_QUERY_LENGTH = 2;

export type Status = 'idle' | 'loading' | 'ready' | 'error';

export interface UiState {
  query: string;
  n: number;
  k: number;
  asOf: string | null;
  status: Status;
  response: SuggestResponse | null;
  error: string | null;
}

type Listener = (state: UiState) => void;

export class SuggestStore {
  private state: UiState = {
    query: '',
    n: 8,
    k: 2,
    asOf: null,
    status: 'idle',
    response: null,
    error: null,
  };
  private listeners: Listener[] = [];
  // monotonically increasing request id; responses carrying a stale id
  // are dropped so only the latest in-flight request ever renders
  private seq = 0;
  private readonly debouncedFetch: () => void;

  constructor(
    private fetcher: Fetcher,
    debounceMs: number = DEBOUNCE_MS,
  ) {
    this.debouncedFetch = debounce(() => void this.fetchNow(), debounceMs);
  }

  getState(): UiState {
    return { ...this.state };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const l of this.listeners) l(this.state);
  }

  setQuery(query: string): void {
    this.emit({ query });
    if (query.trim().length < MIN_QUERY_LENGTH) {
      this.seq++; // invalidate anything in flight
      this.emit({ status: 'idle', response: null, error: null });
      return;
    }
    this.debouncedFetch();
  }

  setN(n: number): void {
    n = Math.max(1, Math.round(n));
    this.emit({ n, k: Math.min(this.state.k, n) });
    this.requery();
  }

  setK(k: number): void {
    this.emit({ k: Math.min(Math.max(0, Math.round(k)), this.state.n) });
    this.requery();
  }

  setAsOf(asOf: string | null): void {
    this.emit({ asOf: asOf || null });
    this.requery();
  }

  pick(text: string): void {
    // clicking a suggestion makes it the next query, immediately
    this.emit({ query: text });
    this.requery();
  }

  private requery(): void {
    if (this.state.query.trim().length >= MIN_QUERY_LENGTH) {
      void this.fetchNow();
    }
  }

  async fetchNow(): Promise<void> {
    const id = ++this.seq;
    const { query, n, k, asOf } = this.state;
    this.emit({ status: 'loading' });
    try {
      const response = await this.fetcher({
        q: query.trim(),
        n,
        k,
        asOf: asOf ?? undefined,
      });
      if (id !== this.seq) return; // superseded
      this.emit({ status: 'ready', response, error: null });
    } catch (err) {
      if (id !== this.seq) return;
      this.emit({ status: 'error', response: null, error: String(err) });
    }
  }
}
