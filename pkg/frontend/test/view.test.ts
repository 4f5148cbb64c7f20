// @vitest-environment jsdom
import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';
import { SuggestStore } from '../src/store.js';
import { bind, Elements } from '../src/view.js';
import { fixtureFetcher } from './fixture.js';

function mount(): Elements {
  document.body.innerHTML = `
    <input id="query" type="text">
    <input id="n-slider" type="range" min="1" max="20" value="8">
    <input id="k-slider" type="range" min="0" max="8" value="2">
    <span id="n-label"></span><span id="k-label"></span>
    <input id="as-of" type="date">
    <p id="banner" hidden></p>
    <div id="panel"></div>`;
  const get = (id: string) => document.getElementById(id)!;
  return {
    input: get('query') as HTMLInputElement,
    nSlider: get('n-slider') as HTMLInputElement,
    kSlider: get('k-slider') as HTMLInputElement,
    nLabel: get('n-label'),
    kLabel: get('k-label'),
    asOf: get('as-of') as HTMLInputElement,
    panel: get('panel'),
    banner: get('banner'),
  };
}

function type(input: HTMLInputElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event('input', { bubbles: true }));
}

describe('explorer view', () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it('typing an anchor token renders at most n rows with at most k day badges', async () => {
    const els = mount();
    bind(new SuggestStore(fixtureFetcher()), els);
    type(els.input, 'ev0tok0');
    await vi.runAllTimersAsync();

    const rows = els.panel.querySelectorAll('.row');
    expect(rows.length).toBeGreaterThan(0);
    expect(rows.length).toBeLessThanOrEqual(8);
    const dayBadges = els.panel.querySelectorAll('.badge-day');
    expect(dayBadges.length).toBeLessThanOrEqual(2);
  });

  it('empty box renders an empty panel and sends no request', async () => {
    const els = mount();
    const calls: string[] = [];
    const inner = fixtureFetcher();
    bind(new SuggestStore((p) => (calls.push(p.q), inner(p))), els);
    type(els.input, '');
    await vi.runAllTimersAsync();
    expect(calls).toHaveLength(0);
    expect(els.panel.children).toHaveLength(0);
  });

  it('moving the k slider re-queries and changes day badges within the split', async () => {
    const els = mount();
    const calls: number[] = [];
    const inner = fixtureFetcher();
    bind(new SuggestStore((p) => (calls.push(p.k), inner(p))), els);
    type(els.input, 'ev0tok0');
    await vi.runAllTimersAsync();
    const before = els.panel.querySelectorAll('.badge-day').length;

    els.kSlider.value = '4';
    els.kSlider.dispatchEvent(new Event('input', { bubbles: true }));
    await vi.runAllTimersAsync();
    expect(calls).toEqual([2, 4]);
    const after = els.panel.querySelectorAll('.badge-day').length;
    expect(after).toBeGreaterThanOrEqual(before);
    expect(after).toBeLessThanOrEqual(4);
    // suggestion order comes straight from the service response
    const texts = [...els.panel.querySelectorAll('.text')].map((a) => a.textContent);
    expect(texts[0]).toBe('ev0tok0 ev0tok1 ev0tok2');
  });

  it('clicking a suggestion replaces the query and re-queries', async () => {
    const els = mount();
    const calls: string[] = [];
    const inner = fixtureFetcher();
    bind(new SuggestStore((p) => (calls.push(p.q), inner(p))), els);
    type(els.input, 'ev0tok0');
    await vi.runAllTimersAsync();

    const second = els.panel.querySelectorAll<HTMLAnchorElement>('.text')[1];
    second.dispatchEvent(new Event('click', { bubbles: true }));
    await vi.runAllTimersAsync();
    expect(els.input.value).toBe(second.textContent);
    expect(calls[calls.length - 1]).toBe(second.textContent);
  });

  it('renders "no suggestions" on an empty result list', async () => {
    const els = mount();
    bind(new SuggestStore(fixtureFetcher()), els);
    type(els.input, 'nothing here');
    await vi.runAllTimersAsync();
    expect(els.panel.textContent).toContain('no suggestions');
  });

  it('shows an error banner on service failure', async () => {
    const els = mount();
    bind(new SuggestStore(() => Promise.reject(new Error('HTTP 500'))), els);
    type(els.input, 'ev0tok0');
    await vi.runAllTimersAsync();
    expect(els.banner.hidden).toBe(false);
    expect(els.banner.textContent).toContain('HTTP 500');
  });
});
