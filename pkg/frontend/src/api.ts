export interface SuggestionItem {
  text: string;
  source: 'day' | 'duration';
  cluster_id: number;
  rank: number;
  cluster_date_or_range: string;
}

export interface SuggestResponse {
  query: string;
  n: number;
  k: number;
  items: SuggestionItem[];
}

export interface SuggestParams {
  q: string;
  n: number;
  k: number;
  asOf?: string; // YYYY-MM-DD
}

export type Fetcher = (params: SuggestParams) => Promise<SuggestResponse>;

function asOfEpoch(day: string): number {
  // end of the given day, UTC
  return Math.floor(Date.parse(day + 'T23:59:59Z') / 1000);
}

export function httpFetcher(base = ''): Fetcher {
  return async (params) => {
    const qs = new URLSearchParams({
      q: params.q,
      n: String(params.n),
      k: String(params.k),
    });
    if (params.asOf) qs.set('as_of', String(asOfEpoch(params.asOf)));
    const resp = await fetch(`${base}/suggest?${qs}`);
    if (!resp.ok) throw new Error(`suggest failed: HTTP ${resp.status}`);
    return (await resp.json()) as SuggestResponse;
  };
}
