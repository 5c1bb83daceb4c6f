// Wire formats served by the backend: per-threat bundles, assessments, scores.

export type CountPair = [string, number];

export interface BundleGroup {
  id: string;
  display_name: string;
  columns: string[];
}

export interface BundleGraphNode {
  id: string;
  kind: 'actor' | 'surface' | 'technique' | 'collection' | 'impact';
  label: string;
  tactic_id: string | null;
}

export interface BundleGraphEdge {
  src: string;
  dst: string;
  weight: number;
  actor: string;
  critical: boolean;
}

export interface Bundle {
  schema: string;
  taxonomy_version: string;
  threat: { id: string; name: string; description?: string };
  participant_total: number;
  columns: string[];
  groups: BundleGroup[];
  labels: Record<string, string>;
  actors: { id: string; display_name: string; kind: string }[];
  matrix: {
    actor_counts: Record<string, number>;
    cells: { actor: string; column: string; count: number }[];
  };
  cumulative: {
    ranking: CountPair[];
    per_tactic_top: Record<string, CountPair[]>;
    top_actors: string[];
  };
  critical: {
    paths: Record<string, Record<string, CountPair[]>>;
    top_actors: string[];
  };
  colors: Record<string, { token: string; hex: string }>;
  graph: { nodes: BundleGraphNode[]; edges: BundleGraphEdge[] };
  surface_links: Record<string, string[]>;
}

export type MitigationLevel = 'none' | 'partial' | 'full';

export interface AssessmentDoc {
  assessment_id: string;
  taxonomy_version: string;
  answers: Record<string, string>;
  weights_source: string | null;
  created_at: string;
  updated_at: string;
  revision: number;
}

export interface QuestionnaireItem {
  item_id: string;
  tactic_id: string;
  technique_id: string;
  prompt: string;
}

export interface Questionnaire {
  taxonomy_version: string;
  items: QuestionnaireItem[];
}

export interface ScoreReport {
  threat_id: string;
  surface_scores: Record<string, number>;
  tactic_scores: Record<string, Record<string, number>>;
  overall: number;
  warnings: string[];
}

export interface WhatIfResponse {
  threat_id: string;
  before: Omit<ScoreReport, 'threat_id'>;
  after: Omit<ScoreReport, 'threat_id'>;
}

export interface ThreatListing {
  id: string;
  name: string;
  description?: string;
  has_bundle: boolean;
}
