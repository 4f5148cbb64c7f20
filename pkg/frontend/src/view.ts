import { SuggestStore, UiState, MIN_QUERY_LENGTH } from './store.js';

export interface Elements {
  input: HTMLInputElement;
  nSlider: HTMLInputElement;
  kSlider: HTMLInputElement;
  nLabel: HTMLElement;
  kLabel: HTMLElement;
  asOf: HTMLInputElement;
  panel: HTMLElement;
  banner: HTMLElement;
}

export function bind(store: SuggestStore, el: Elements): void {
  el.input.addEventListener('input', () => store.setQuery(el.input.value));
  el.nSlider.addEventListener('input', () => store.setN(Number(el.nSlider.value)));
  el.kSlider.addEventListener('input', () => store.setK(Number(el.kSlider.value)));
  el.asOf.addEventListener('change', () => store.setAsOf(el.asOf.value || null));
  store.subscribe((state) => render(state, el, store));
  render(store.getState(), el, store);
}

function render(state: UiState, el: Elements, store: SuggestStore): void {
  el.kSlider.max = String(state.n);
  if (el.input.value !== state.query) el.input.value = state.query;
  if (el.kSlider.value !== String(state.k)) el.kSlider.value = String(state.k);
  el.nLabel.textContent = String(state.n);
  el.kLabel.textContent = String(state.k);

  el.banner.hidden = state.status !== 'error';
  el.banner.textContent = state.error ?? '';

  el.panel.replaceChildren();
  if (state.query.trim().length < MIN_QUERY_LENGTH) return;
  if (state.status === 'ready' && state.response) {
    if (state.response.items.length === 0) {
      const empty = document.createElement('p');
      empty.className = 'empty';
      empty.textContent = 'no suggestions';
      el.panel.appendChild(empty);
      return;
    }
    for (const item of state.response.items) {
      const row = document.createElement('div');
      row.className = 'row';

      const badge = document.createElement('span');
      badge.className = `badge badge-${item.source}`;
      badge.textContent = item.source;

      const text = document.createElement('a');
      text.className = 'text';
      text.href = '#';
      text.textContent = item.text;
      text.addEventListener('click', (ev) => {
        ev.preventDefault();
        store.pick(item.text);
      });

      const span = document.createElement('span');
      span.className = 'span';
      span.textContent = item.cluster_date_or_range;

      const rank = document.createElement('span');
      rank.className = 'rank';
      rank.textContent = item.rank.toFixed(3);

      row.append(badge, text, span, rank);
      el.panel.appendChild(row);
    }
  }
}
