"""HTTP service for the dashboard: taxonomy, per-threat bundles, assessments.

Bundles are precomputed files loaded once at startup; the taxonomy and
bundle map are immutable afterwards. Assessments are the only mutable
state, guarded by optimistic concurrency: every response carries a
revision, and updates carrying a stale revision get 409.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import PtmfError, RevisionConflictError, UnknownItemError
from .pathgraph import load_bundle, matrix_from_bundle
from .risk import (
    Assessment,
    AssessmentStore,
    MITIGATION_LEVELS,
    SurfaceRiskReport,
    generate_questionnaire,
    score_assessment,
    what_if,
)
from .taxonomy import Taxonomy


class CreateAssessmentBody(BaseModel):
    threat_id: str | None = Field(default=None, description="Bundle supplying weights for scoring")


class AnswersBody(BaseModel):
    answers: dict[str, str]
    revision: int


class WhatIfBody(BaseModel):
    answers: dict[str, str]
    threat_id: str | None = None


def _assessment_payload(a: Assessment) -> dict:
    return {
        "assessment_id": a.assessment_id,
        "taxonomy_version": a.taxonomy_version,
        "answers": dict(sorted(a.answers.items())),
        "weights_source": a.weights_source,
        "created_at": a.created_at,
        "updated_at": a.updated_at,
        "revision": a.revision,
    }


def _report_payload(r: SurfaceRiskReport) -> dict:
    return {
        "surface_scores": r.surface_scores,
        "tactic_scores": r.tactic_scores,
        "overall": r.overall,
        "warnings": list(r.warnings),
    }


def create_app(tax: Taxonomy, bundles: dict[str, dict], store: AssessmentStore) -> FastAPI:
    app = FastAPI(title="ptmf", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def invalid_body(request: Request, exc: RequestValidationError):
        errors = [f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in exc.errors()]
        return JSONResponse(status_code=400, content={"detail": {"errors": errors}})
    matrices = {threat: matrix_from_bundle(doc) for threat, doc in bundles.items()}
    template = generate_questionnaire(tax)

    def _get_assessment(assessment_id: str) -> Assessment:
        a = store.load(assessment_id)
        if a is None:
            raise HTTPException(status_code=404, detail=f"unknown assessment '{assessment_id}'")
        return a

    def _matrix_for(threat_id: str | None, fallback: str | None):
        chosen = threat_id or fallback
        if chosen is None:
            raise HTTPException(status_code=400, detail={"errors": ["no threat selected and no default bundle"]})
        if chosen not in matrices:
            raise HTTPException(status_code=404, detail=f"no bundle for threat '{chosen}'")
        return matrices[chosen]

    def _check_answers(answers: dict[str, str]) -> None:
        errors = []
        known = set(template.item_ids())
        for item_id, level in answers.items():
            if item_id not in known:
                errors.append(f"unknown item '{item_id}'")
            if level not in MITIGATION_LEVELS:
                errors.append(f"item '{item_id}': unknown level '{level}'")
        if errors:
            raise HTTPException(status_code=400, detail={"errors": errors})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/taxonomy")
    def taxonomy_doc():
        from .taxonomy import serialize_taxonomy

        return json.loads(serialize_taxonomy(tax))

    @app.get("/questionnaire")
    def questionnaire():
        return {
            "taxonomy_version": template.taxonomy_version,
            "items": [
                {"item_id": i.item_id, "tactic_id": i.tactic_id, "technique_id": i.technique_id, "prompt": i.prompt}
                for i in template.items
            ],
        }

    @app.get("/threats")
    def threats():
        return [
            {"id": t.id, "name": t.name, "description": t.description, "has_bundle": t.id in bundles}
            for t in tax.threats
        ]

    @app.get("/threats/{threat_id}/bundle")
    def bundle(threat_id: str):
        if threat_id not in bundles:
            raise HTTPException(status_code=404, detail=f"no bundle for threat '{threat_id}'")
        return bundles[threat_id]

    @app.post("/assessments", status_code=201)
    def create_assessment(body: CreateAssessmentBody):
        if body.threat_id is not None and body.threat_id not in bundles:
            raise HTTPException(status_code=404, detail=f"no bundle for threat '{body.threat_id}'")
        a = store.create(taxonomy_version=tax.version, weights_source=body.threat_id)
        return _assessment_payload(a)

    @app.get("/assessments/{assessment_id}")
    def get_assessment(assessment_id: str):
        return _assessment_payload(_get_assessment(assessment_id))

    @app.put("/assessments/{assessment_id}/answers")
    def put_answers(assessment_id: str, body: AnswersBody):
        _get_assessment(assessment_id)
        _check_answers(body.answers)
        try:
            updated = store.update_answers(assessment_id, body.answers, body.revision)
        except RevisionConflictError as e:
            raise HTTPException(status_code=409, detail={"error": "revision conflict", "current": e.expected})
        return _assessment_payload(updated)

    @app.get("/assessments/{assessment_id}/score")
    def score(assessment_id: str, threat: str | None = None):
        a = _get_assessment(assessment_id)
        fm = _matrix_for(threat, a.weights_source)
        try:
            report = score_assessment(a, fm, tax)
        except UnknownItemError as e:
            raise HTTPException(status_code=400, detail={"errors": [str(e)]})
        return {"threat_id": fm.threat_id, **_report_payload(report)}

    @app.post("/assessments/{assessment_id}/what-if")
    def what_if_route(assessment_id: str, body: WhatIfBody):
        a = _get_assessment(assessment_id)
        _check_answers(body.answers)
        fm = _matrix_for(body.threat_id, a.weights_source)
        try:
            before, after = what_if(a, body.answers, fm, tax)
        except PtmfError as e:
            raise HTTPException(status_code=400, detail={"errors": [str(e)]})
        return {
            "threat_id": fm.threat_id,
            "before": _report_payload(before),
            "after": _report_payload(after),
        }

    return app


def create_app_from_dirs(tax: Taxonomy, bundle_dir: str | Path, data_dir: str | Path) -> FastAPI:
    bundles = {}
    for path in sorted(Path(bundle_dir).glob("*.json")):
        doc = load_bundle(path.read_text("utf-8"))
        bundles[doc["threat"]["id"]] = doc
    return create_app(tax, bundles, AssessmentStore(data_dir))
