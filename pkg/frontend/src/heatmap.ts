// Frequency heatmap (actors x techniques, starred critical cells) and the
// surface-risk heatmap. Score values are displayed exactly as the backend
// serialized them; this module does no arithmetic on them.

import type { Bundle, ScoreReport } from './types.js';
import { criticalCells } from './pathExplorer.js';

const esc = (s: string): string =>
  s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');

/** Pass-through formatting: the displayed text is the JSON value verbatim. */
export function displayScore(value: number): string {
  return String(value);
}

function shade(count: number, max: number): string {
  if (count === 0 || max === 0) return '#ffffff';
  const t = count / max;
  const channel = Math.round(245 - t * 150);
  return `rgb(${channel}, ${channel + 8}, 255)`;
}

export function renderFrequencyHeatmap(bundle: Bundle): string {
  const counts = new Map<string, number>();
  let max = 0;
  for (const cell of bundle.matrix.cells) {
    counts.set(`${cell.actor}|${cell.column}`, cell.count);
    max = Math.max(max, cell.count);
  }
  const rows: string[] = ['<table class="heatmap frequency-heatmap">'];
  rows.push(
    '<thead><tr><th></th>' +
      bundle.groups
        .map((g) => `<th colspan="${g.columns.length}" class="group">${esc(g.display_name)}</th>`)
        .join('') +
      '</tr><tr><th>Actor</th>' +
      bundle.columns.map((c) => `<th class="col" title="${esc(c)}">${esc(bundle.labels[c] ?? c)}</th>`).join('') +
      '</tr></thead><tbody>',
  );
  for (const actor of bundle.actors) {
    const critical = criticalCells(bundle, actor.id);
    const cells = bundle.columns
      .map((column) => {
        const count = counts.get(`${actor.id}|${column}`) ?? 0;
        const starred = critical.has(column);
        const star = starred ? `<span class="star">★</span>` : '';
        return (
          `<td class="cell${starred ? ' starred' : ''}" data-actor="${esc(actor.id)}" data-column="${esc(column)}" ` +
          `style="background:${shade(count, max)}" title="frequency ${count}">${star}${count || ''}</td>`
        );
      })
      .join('');
    const color = bundle.colors[actor.id]?.hex ?? '#78909c';
    rows.push(
      `<tr><th class="actor" style="border-left: 6px solid ${color}">${esc(actor.display_name)}</th>${cells}</tr>`,
    );
  }
  rows.push('</tbody></table>');
  return rows.join('\n');
}

function riskBucket(score: number): string {
  if (score >= 0.66) return 'risk-high';
  if (score >= 0.33) return 'risk-medium';
  return 'risk-low';
}

/** Surfaces x overall risk heatmap; numbers are the api's values verbatim. */
export function renderRiskHeatmap(report: Pick<ScoreReport, 'surface_scores' | 'overall'>, labels: Record<string, string> = {}): string {
  const rows = Object.entries(report.surface_scores).map(([surface, score]) => {
    const label = labels[`surface/${surface}`] ?? surface;
    return (
      `<tr><th>${esc(label)}</th>` +
      `<td class="score ${riskBucket(score)}" data-surface="${esc(surface)}">${esc(displayScore(score))}</td></tr>`
    );
  });
  return (
    '<table class="heatmap risk-heatmap"><thead><tr><th>Threat surface</th><th>Risk</th></tr></thead><tbody>' +
    rows.join('\n') +
    `</tbody><tfoot><tr><th>Overall</th><td class="score ${riskBucket(report.overall)}">` +
    `${esc(displayScore(report.overall))}</td></tr></tfoot></table>`
  );
}
