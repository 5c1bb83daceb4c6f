// Browser entry point: wires the api client, path explorer, and assessment
// wizard into the page. Rendering itself lives in the pure modules.

import { ApiClient } from './api.js';
import { renderFrequencyHeatmap, renderRiskHeatmap } from './heatmap.js';
import { defaultFilter, renderPathExplorer, type GraphFilter } from './pathExplorer.js';
import type { Bundle, MitigationLevel } from './types.js';
import { AssessmentWizard, type DraftStorage } from './wizard.js';

const apiBase = new URLSearchParams(location.search).get('api') ?? 'http://127.0.0.1:7878';
const client = new ApiClient(apiBase);

const browserStorage: DraftStorage = {
  get: (k) => localStorage.getItem(k),
  set: (k, v) => localStorage.setItem(k, v),
  remove: (k) => localStorage.removeItem(k),
};

const el = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
};

let bundle: Bundle | null = null;
let filter: GraphFilter = defaultFilter();
let wizard: AssessmentWizard | null = null;

function repaintGraph(): void {
  el('path-explorer').innerHTML = bundle
    ? renderPathExplorer(bundle, filter)
    : '<div class="empty-state">Select a threat.</div>';
  el('frequency-heatmap').innerHTML = bundle ? renderFrequencyHeatmap(bundle) : '';
}

function repaintWizard(): void {
  if (!wizard) return;
  const { score, questionnaire, conflict, offline, whatIf } = wizard.state;
  el('conflict-banner').hidden = !conflict;
  el('offline-banner').hidden = !offline;
  if (score && bundle) el('risk-heatmap').innerHTML = renderRiskHeatmap(score, bundle.labels);
  if (whatIf) {
    el('what-if-panel').innerHTML =
      '<h3>What if…</h3><div class="compare"><div><h4>Before</h4>' +
      renderRiskHeatmap(whatIf.response.before, bundle?.labels ?? {}) +
      '</div><div><h4>After</h4>' +
      renderRiskHeatmap(whatIf.response.after, bundle?.labels ?? {}) +
      '</div></div><button id="apply-what-if">Apply</button> <button id="discard-what-if">Discard</button>';
    el('apply-what-if').onclick = () => wizard?.applyWhatIf().then(repaintWizard);
    el('discard-what-if').onclick = () => {
      wizard?.discardWhatIf();
      repaintWizard();
    };
  } else {
    el('what-if-panel').innerHTML = '';
  }
  if (questionnaire) {
    const answers = { ...(wizard.state.assessment?.answers ?? {}), ...wizard.draft };
    el('questionnaire').innerHTML = questionnaire.items
      .map((item) => {
        const current = answers[item.item_id] ?? 'none';
        const options = (['none', 'partial', 'full'] as const)
          .map((level) => `<option value="${level}" ${level === current ? 'selected' : ''}>${level}</option>`)
          .join('');
        return (
          `<div class="question"><label>${item.prompt}</label>` +
          `<select data-item="${item.item_id}">${options}</select></div>`
        );
      })
      .join('\n');
    for (const select of el('questionnaire').querySelectorAll('select')) {
      select.addEventListener('change', (event) => {
        const target = event.target as HTMLSelectElement;
        wizard
          ?.answer(target.dataset.item as string, target.value as MitigationLevel)
          .then(repaintWizard);
      });
    }
  }
}

async function selectThreat(threatId: string): Promise<void> {
  bundle = await client.bundle(threatId).catch(() => null);
  repaintGraph();
  wizard = new AssessmentWizard(client, browserStorage, threatId);
  await wizard.start();
  repaintWizard();
}

async function init(): Promise<void> {
  const threats = await client.threats();
  const picker = el('threat-picker') as HTMLSelectElement;
  picker.innerHTML = threats
    .filter((t) => t.has_bundle)
    .map((t) => `<option value="${t.id}">${t.id} — ${t.name}</option>`)
    .join('');
  picker.onchange = () => void selectThreat(picker.value);
  (el('critical-only') as HTMLInputElement).onchange = (event) => {
    filter = { ...filter, criticalOnly: (event.target as HTMLInputElement).checked };
    repaintGraph();
  };
  el('retry-button').onclick = () => wizard?.retry().then(repaintWizard);
  el('reload-merge-button').onclick = () => wizard?.reloadAndMerge().then(repaintWizard);
  if (picker.value) await selectThreat(picker.value);
}

init().catch((e) => {
  el('path-explorer').innerHTML = `<div class="empty-state">Failed to load: ${String(e)} <button onclick="location.reload()">Retry</button></div>`;
});
