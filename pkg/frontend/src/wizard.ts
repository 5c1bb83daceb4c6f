// Assessment wizard view model: answer flow with live rescoring, a
// non-persisting what-if overlay, optimistic-concurrency recovery, and a
// local draft that survives network loss.

import { ApiClient, ConflictError } from './api.js';
import type { AssessmentDoc, MitigationLevel, Questionnaire, ScoreReport, WhatIfResponse } from './types.js';

export interface DraftStorage {
  get(key: string): string | null;
  set(key: string, value: string): void;
  remove(key: string): void;
}

export const memoryStorage = (): DraftStorage => {
  const map = new Map<string, string>();
  return {
    get: (k) => map.get(k) ?? null,
    set: (k, v) => void map.set(k, v),
    remove: (k) => void map.delete(k),
  };
};

export interface WizardState {
  assessment: AssessmentDoc | null;
  questionnaire: Questionnaire | null;
  score: ScoreReport | null;
  whatIf: { delta: Record<string, MitigationLevel>; response: WhatIfResponse } | null;
  conflict: { serverRevision: number } | null;
  offline: boolean;
}

const isNetworkError = (e: unknown): boolean => !(e instanceof ConflictError) && e instanceof Error && !('status' in e);

export class AssessmentWizard {
  state: WizardState = {
    assessment: null,
    questionnaire: null,
    score: null,
    whatIf: null,
    conflict: null,
    offline: false,
  };

  constructor(
    private client: ApiClient,
    private storage: DraftStorage,
    private threatId: string,
  ) {}

  private draftKey(): string {
    return `ptmf-draft/${this.threatId}`;
  }

  /** Pending answers not yet accepted by the server. */
  get draft(): Record<string, MitigationLevel> {
    const raw = this.storage.get(this.draftKey());
    return raw ? (JSON.parse(raw) as Record<string, MitigationLevel>) : {};
  }

  private saveDraft(draft: Record<string, MitigationLevel>): void {
    if (Object.keys(draft).length === 0) this.storage.remove(this.draftKey());
    else this.storage.set(this.draftKey(), JSON.stringify(draft));
  }

  /** Create a fresh assessment, or resume the stored one when possible. */
  async start(): Promise<void> {
    this.state.questionnaire = await this.client.questionnaire();
    const storedId = this.storage.get(`ptmf-assessment/${this.threatId}`);
    if (storedId) {
      try {
        this.state.assessment = await this.client.getAssessment(storedId);
      } catch {
        this.state.assessment = null; // stale id: fall through to create
      }
    }
    if (!this.state.assessment) {
      this.state.assessment = await this.client.createAssessment(this.threatId);
      this.storage.set(`ptmf-assessment/${this.threatId}`, this.state.assessment.assessment_id);
    }
    await this.flushDraft();
    await this.refreshScore();
  }

  /** Record one answer; pushes the whole outstanding draft to the server. */
  async answer(itemId: string, level: MitigationLevel): Promise<void> {
    const draft = this.draft;
    draft[itemId] = level;
    this.saveDraft(draft);
    await this.flushDraft();
    if (!this.state.offline && !this.state.conflict) await this.refreshScore();
  }

  private async flushDraft(): Promise<void> {
    const assessment = this.state.assessment;
    const draft = this.draft;
    if (!assessment || Object.keys(draft).length === 0) return;
    try {
      this.state.assessment = await this.client.putAnswers(assessment.assessment_id, draft, assessment.revision);
      this.saveDraft({});
      this.state.conflict = null;
      this.state.offline = false;
    } catch (e) {
      if (e instanceof ConflictError) {
        this.state.conflict = { serverRevision: e.current }; // draft kept for merge
      } else if (isNetworkError(e)) {
        this.state.offline = true; // draft kept for retry
      } else {
        throw e;
      }
    }
  }

  /** Conflict recovery: take the server's answers, replay the local draft. */
  async reloadAndMerge(): Promise<void> {
    const assessment = this.state.assessment;
    if (!assessment) return;
    this.state.assessment = await this.client.getAssessment(assessment.assessment_id);
    this.state.conflict = null;
    await this.flushDraft();
    await this.refreshScore();
  }

  /** Retry after network loss; the draft survived in storage. */
  async retry(): Promise<void> {
    this.state.offline = false;
    await this.flushDraft();
    if (!this.state.offline) await this.refreshScore();
  }

  async refreshScore(): Promise<void> {
    const assessment = this.state.assessment;
    if (!assessment) return;
    try {
      this.state.score = await this.client.score(assessment.assessment_id, this.threatId);
    } catch (e) {
      if (isNetworkError(e)) this.state.offline = true;
      else throw e;
    }
  }

  /** Compare before/after without persisting anything. */
  async previewWhatIf(delta: Record<string, MitigationLevel>): Promise<WhatIfResponse> {
    const assessment = this.state.assessment;
    if (!assessment) throw new Error('wizard not started');
    const response = await this.client.whatIf(assessment.assessment_id, delta, this.threatId);
    this.state.whatIf = { delta, response };
    return response;
  }

  discardWhatIf(): void {
    this.state.whatIf = null;
  }

  /** Persist the previewed overlay as real answers. */
  async applyWhatIf(): Promise<void> {
    const overlay = this.state.whatIf;
    if (!overlay) return;
    const draft = this.draft;
    Object.assign(draft, overlay.delta);
    this.saveDraft(draft);
    this.state.whatIf = null;
    await this.flushDraft();
    if (!this.state.offline && !this.state.conflict) await this.refreshScore();
  }
}
