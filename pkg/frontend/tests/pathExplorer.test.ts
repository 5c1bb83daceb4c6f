import { readFileSync } from 'node:fs';
import { describe, expect, it } from 'vitest';

import { renderFrequencyHeatmap } from '../src/heatmap.js';
import {
  criticalCells,
  defaultFilter,
  layoutGraph,
  renderPathExplorer,
  starredCellKeys,
  visibleEdges,
} from '../src/pathExplorer.js';
import type { Bundle } from '../src/types.js';

const load = (name: string): Bundle =>
  JSON.parse(readFileSync(new URL(`./fixtures/${name}`, import.meta.url), 'utf-8')) as Bundle;

const bundle = load('T1.json');
const emptyBundle = load('T1-empty.json');

/** Independent argmax-with-ties recomputation from the raw matrix cells. */
function argmaxStars(b: Bundle): Set<string> {
  const byActorGroup = new Map<string, Map<string, number>>();
  for (const cell of b.matrix.cells) {
    const group = cell.column.split('/', 1)[0];
    const key = `${cell.actor}|${group}`;
    if (!byActorGroup.has(key)) byActorGroup.set(key, new Map());
    byActorGroup.get(key)!.set(cell.column, cell.count);
  }
  const stars = new Set<string>();
  for (const [key, cells] of byActorGroup) {
    const actor = key.split('|')[0];
    const max = Math.max(...cells.values());
    if (max <= 0) continue;
    for (const [column, count] of cells) {
      if (count === max) stars.add(`${actor}|${column}`);
    }
  }
  return stars;
}

describe('path explorer', () => {
  it('emphasizes exactly the top-3 critical actors', () => {
    expect(bundle.critical.top_actors).toEqual(['cloud_provider', 'skilled_outsider', 'service_provider']);
    const { nodes } = layoutGraph(bundle, defaultFilter());
    const emphasized = nodes.filter((n) => n.emphasized).map((n) => n.id).sort();
    expect(emphasized).toEqual(['actor/cloud_provider', 'actor/service_provider', 'actor/skilled_outsider']);

    const svg = renderPathExplorer(bundle);
    expect(svg.match(/top-actor/g)?.length).toBe(3);
  });

  it('critical-only filter shows exactly the critical edge set', () => {
    const visible = visibleEdges(bundle, { actors: null, criticalOnly: true });
    const expected = bundle.graph.edges.filter((e) => e.critical);
    expect(visible).toEqual(expected);

    const svg = renderPathExplorer(bundle, { actors: null, criticalOnly: true });
    expect(svg.match(/class="edge critical"/g)?.length).toBe(expected.length);
    expect(svg).not.toContain('class="edge"');
  });

  it('actor subset filter drops other actors edges', () => {
    const only = new Set(['cloud_provider']);
    const visible = visibleEdges(bundle, { actors: only, criticalOnly: false });
    expect(visible.length).toBeGreaterThan(0);
    expect(visible.every((e) => e.actor === 'cloud_provider')).toBe(true);
  });

  it('stars equal the independently recomputed argmax cells', () => {
    expect(starredCellKeys(bundle)).toEqual(argmaxStars(bundle));
  });

  it('edge tooltips carry the frequency', () => {
    const svg = renderPathExplorer(bundle);
    expect(svg).toContain('frequency 16'); // cloud provider discovery/linked_data
  });

  it('empty bundle renders an empty state without crashing', () => {
    const html = renderPathExplorer(emptyBundle);
    expect(html).toContain('empty-state');
    expect(html).toContain('Identification of IoT User');
    expect(html).not.toContain('<svg');
  });
});

describe('frequency heatmap', () => {
  it('renders one starred cell per critical-path cell', () => {
    const html = renderFrequencyHeatmap(bundle);
    const stars = argmaxStars(bundle);
    const rendered = html.match(/class="cell starred"/g)?.length ?? 0;
    expect(rendered).toBe(stars.size);
    for (const key of stars) {
      const [actor, column] = key.split('|');
      expect(html).toContain(`data-actor="${actor}" data-column="${column}"`);
    }
  });

  it('labels columns with display names grouped by tactic', () => {
    const html = renderFrequencyHeatmap(bundle);
    expect(html).toContain('Linked data');
    expect(html).toContain('Threat Surface');
    expect(html).toContain('Defense Evasion');
  });

  it('applies the bundle actor colors', () => {
    const html = renderFrequencyHeatmap(bundle);
    expect(html).toContain(bundle.colors['cloud_provider'].hex);
  });
});
