// Actor -> surface -> technique -> collection -> impact path explorer.
// Pure functions from a bundle + view filter to an SVG string, so rendering
// is testable without a DOM; main.ts injects the output into the page.

import type { Bundle, BundleGraphEdge } from './types.js';

export interface GraphFilter {
  actors: Set<string> | null; // null = all actors
  criticalOnly: boolean;
}

export const defaultFilter = (): GraphFilter => ({ actors: null, criticalOnly: false });

const STAGE_WIDTH = 230;
const ROW_HEIGHT = 26;
const NODE_WIDTH = 200;
const NODE_HEIGHT = 20;

export function criticalCells(bundle: Bundle, actor: string): Set<string> {
  const path = bundle.critical.paths[actor] ?? {};
  const cells = new Set<string>();
  for (const pairs of Object.values(path)) {
    for (const [column] of pairs) cells.add(column);
  }
  return cells;
}

/** "actor|column" keys for every starred heatmap cell in the bundle. */
export function starredCellKeys(bundle: Bundle): Set<string> {
  const keys = new Set<string>();
  for (const actor of Object.keys(bundle.critical.paths)) {
    for (const column of criticalCells(bundle, actor)) keys.add(`${actor}|${column}`);
  }
  return keys;
}

export function visibleEdges(bundle: Bundle, filter: GraphFilter): BundleGraphEdge[] {
  return bundle.graph.edges.filter((edge) => {
    if (filter.actors && !filter.actors.has(edge.actor)) return false;
    if (filter.criticalOnly && !edge.critical) return false;
    return true;
  });
}

export function isTopActor(bundle: Bundle, actor: string): boolean {
  return bundle.critical.top_actors.slice(0, 3).includes(actor);
}

interface LaidOutNode {
  id: string;
  label: string;
  stage: number;
  row: number;
  emphasized: boolean;
}

function stageOf(nodeId: string, stageOrder: string[]): number {
  const group = nodeId.split('/', 1)[0];
  const idx = stageOrder.indexOf(group);
  return idx === -1 ? stageOrder.length : idx;
}

export function layoutGraph(bundle: Bundle, filter: GraphFilter): {
  nodes: LaidOutNode[];
  edges: BundleGraphEdge[];
  width: number;
  height: number;
} {
  const edges = visibleEdges(bundle, filter);
  const used = new Set<string>();
  for (const edge of edges) {
    used.add(edge.src);
    used.add(edge.dst);
  }
  const stageOrder = ['actor', ...bundle.groups.map((g) => g.id)];
  const nodes: LaidOutNode[] = [];
  const rows: number[] = stageOrder.map(() => 0).concat([0]);
  for (const node of bundle.graph.nodes) {
    if (!used.has(node.id)) continue;
    const stage = stageOf(node.id, stageOrder);
    nodes.push({
      id: node.id,
      label: node.label,
      stage,
      row: rows[stage]++,
      emphasized: node.kind === 'actor' && isTopActor(bundle, node.id.slice('actor/'.length)),
    });
  }
  const height = Math.max(1, ...rows) * ROW_HEIGHT + 40;
  return { nodes, edges, width: stageOrder.length * STAGE_WIDTH, height };
}

const esc = (s: string): string =>
  s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');

function nodeCenter(node: LaidOutNode): { x: number; y: number } {
  return { x: node.stage * STAGE_WIDTH + NODE_WIDTH / 2, y: 30 + node.row * ROW_HEIGHT + NODE_HEIGHT / 2 };
}

/** Render the multipartite graph. Empty bundles yield an empty-state div. */
export function renderPathExplorer(bundle: Bundle, filter: GraphFilter = defaultFilter()): string {
  const { nodes, edges, width, height } = layoutGraph(bundle, filter);
  if (edges.length === 0) {
    return `<div class="empty-state">No responses recorded for ${esc(bundle.threat.name)} yet.</div>`;
  }
  const byId = new Map(nodes.map((n) => [n.id, n]));
  const parts: string[] = [
    `<svg class="path-explorer" viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">`,
  ];
  for (const edge of edges) {
    const src = byId.get(edge.src);
    const dst = byId.get(edge.dst);
    if (!src || !dst) continue;
    const a = nodeCenter(src);
    const b = nodeCenter(dst);
    const color = edge.critical ? bundle.colors[edge.actor]?.hex ?? '#78909c' : '#d0d0d0';
    const widthPx = edge.critical ? 2.5 : 1;
    parts.push(
      `<line class="edge${edge.critical ? ' critical' : ''}" data-actor="${esc(edge.actor)}" ` +
        `x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" stroke="${color}" stroke-width="${widthPx}">` +
        `<title>${esc(edge.actor)}: ${esc(edge.dst)} (frequency ${edge.weight})</title></line>`,
    );
  }
  for (const node of nodes) {
    const x = node.stage * STAGE_WIDTH;
    const y = 30 + node.row * ROW_HEIGHT;
    const cls = node.emphasized ? 'node top-actor' : 'node';
    parts.push(
      `<g class="${cls}" data-id="${esc(node.id)}">` +
        `<rect x="${x}" y="${y}" width="${NODE_WIDTH}" height="${NODE_HEIGHT}" rx="4" ` +
        `fill="${node.emphasized ? '#fff3cd' : '#f5f5f5'}" stroke="${node.emphasized ? '#b8860b' : '#999'}" ` +
        `stroke-width="${node.emphasized ? 2 : 1}"/>` +
        `<text x="${x + 6}" y="${y + 14}" font-size="11">${esc(node.label)}</text></g>`,
    );
  }
  parts.push('</svg>');
  return parts.join('\n');
}
