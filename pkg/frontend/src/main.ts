import { httpFetcher } from './api.js';
import { SuggestStore } from './store.js';
import { bind, Elements } from './view.js';

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

const els: Elements = {
  input: byId<HTMLInputElement>('query'),
  nSlider: byId<HTMLInputElement>('n-slider'),
  kSlider: byId<HTMLInputElement>('k-slider'),
  nLabel: byId('n-label'),
  kLabel: byId('k-label'),
  asOf: byId<HTMLInputElement>('as-of'),
  panel: byId('panel'),
  banner: byId('banner'),
};

// the bundle is served by the same process that serves /suggest
const store = new SuggestStore(httpFetcher(''));
bind(store, els);
