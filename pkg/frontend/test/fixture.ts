import { Fetcher, SuggestParams, SuggestResponse, SuggestionItem } from '../src/api.js';

// mirrors what the service returns for the planted three-event index:
// day-cluster keywords for the current and previous day, then
// duration-cluster keywords
const DAY_KEYWORDS = [
  ['ev0tok0 ev0tok1 ev0tok2', 'ev0tok5 ev0tok6 ev0tok7'],
  ['ev0tok3 ev0tok4', 'ev0tok0 ev0tok1 ev0tok2'],
];
const DURATION_KEYWORDS = [
  'ev0tok0 ev0tok1 ev0tok2', 'ev0tok3 ev0tok4', 'ev0tok5 ev0tok6 ev0tok7',
  'ev0 extra one', 'ev0 extra two', 'ev0 extra three', 'ev0 extra four',
  'ev0 extra five',
];

function mix(params: SuggestParams): SuggestionItem[] {
  const items: SuggestionItem[] = [];
  const seen = new Set<string>();
  const take = (text: string, source: 'day' | 'duration', quota: number) => {
    if (items.length >= quota || seen.has(text)) return;
    seen.add(text);
    items.push({
      text,
      source,
      cluster_id: items.length,
      rank: 1 / (items.length + 1),
      cluster_date_or_range:
        source === 'day' ? '2016-02-03' : '2016-02-01..2016-02-03',
    });
  };
  for (let m = 0; m < 2; m++)
    for (const cluster of DAY_KEYWORDS)
      if (cluster[m]) take(cluster[m], 'day', Math.min(params.k, params.n));
  for (const text of DURATION_KEYWORDS) take(text, 'duration', params.n);
  return items;
}

export function fixtureFetcher(): Fetcher {
  return async (params) => ({
    query: params.q,
    n: params.n,
    k: params.k,
    items: params.q.startsWith('ev0') ? mix(params) : [],
  });
}

export function delayedFetcher(
  inner: Fetcher,
  delays: number[],
): { fetcher: Fetcher; calls: SuggestParams[] } {
  const calls: SuggestParams[] = [];
  const fetcher: Fetcher = (params) => {
    const delay = delays[calls.length] ?? 0;
    calls.push(params);
    return new Promise<SuggestResponse>((resolve, reject) => {
      setTimeout(() => inner(params).then(resolve, reject), delay);
    });
  };
  return { fetcher, calls };
}
