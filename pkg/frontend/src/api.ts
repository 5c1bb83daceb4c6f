// Thin client over the backend HTTP surface. The dashboard never computes
// scores itself; every number it shows comes back from these calls.

import type {
  AssessmentDoc,
  Bundle,
  MitigationLevel,
  Questionnaire,
  ScoreReport,
  ThreatListing,
  WhatIfResponse,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ConflictError extends Error {
  constructor(public current: number) {
    super(`revision conflict; server is at revision ${current}`);
  }
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (response.status === 409) {
      const body = await response.json();
      throw new ConflictError(body.detail?.current ?? -1);
    }
    if (!response.ok) {
      throw new ApiError(response.status, `${init?.method ?? 'GET'} ${path} -> ${response.status}`);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request('/health');
  }

  threats(): Promise<ThreatListing[]> {
    return this.request('/threats');
  }

  bundle(threatId: string): Promise<Bundle> {
    return this.request(`/threats/${encodeURIComponent(threatId)}/bundle`);
  }

  questionnaire(): Promise<Questionnaire> {
    return this.request('/questionnaire');
  }

  createAssessment(threatId: string | null): Promise<AssessmentDoc> {
    return this.request('/assessments', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ threat_id: threatId }),
    });
  }

  getAssessment(id: string): Promise<AssessmentDoc> {
    return this.request(`/assessments/${encodeURIComponent(id)}`);
  }

  putAnswers(id: string, answers: Record<string, MitigationLevel>, revision: number): Promise<AssessmentDoc> {
    return this.request(`/assessments/${encodeURIComponent(id)}/answers`, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ answers, revision }),
    });
  }

  score(id: string, threatId?: string): Promise<ScoreReport> {
    const query = threatId ? `?threat=${encodeURIComponent(threatId)}` : '';
    return this.request(`/assessments/${encodeURIComponent(id)}/score${query}`);
  }

  whatIf(id: string, answers: Record<string, MitigationLevel>, threatId?: string): Promise<WhatIfResponse> {
    return this.request(`/assessments/${encodeURIComponent(id)}/what-if`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ answers, threat_id: threatId ?? null }),
    });
  }
}
