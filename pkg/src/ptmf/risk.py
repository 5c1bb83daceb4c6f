"""Threat-surface risk assessment from administrator mitigation answers.

Scoring formula (an interpretation, documented in the README): for each
surface the risk is the expert-frequency-weighted fraction of unmitigated
technique exposure,

    score(s) = sum_t w(t) * (1 - m(t)) / sum_t w(t)

where t ranges over questionnaire techniques attributed to the surface,
w(t) is the technique's total expert frequency plus one (so never-selected
techniques still count), and m(t) is the answered mitigation level
(none=0, partial=0.5, full=1). A technique is attributed to a surface when
any participant mapped an actor to both in the same response; techniques
with no co-occurrence data attribute to every surface. The formula is
bounded in [0,1], monotone in every answer, and invariant under scaling
all weights by a positive constant.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from .analysis import FrequencyMatrix
from .errors import (
    DocumentFormatError,
    MissingWeightsError,
    RevisionConflictError,
    UnknownItemError,
)
from .taxonomy import QUESTION_TACTICS, Taxonomy

MITIGATION_LEVELS = {"none": 0.0, "partial": 0.5, "full": 1.0}


@dataclass(frozen=True)
class QuestionItem:
    item_id: str  # qualified technique id, "tactic/technique"
    tactic_id: str
    technique_id: str
    prompt: str


@dataclass(frozen=True)
class QuestionnaireTemplate:
    taxonomy_version: str
    items: tuple[QuestionItem, ...]

    def item_ids(self) -> tuple[str, ...]:
        return tuple(i.item_id for i in self.items)


@dataclass
class Assessment:
    assessment_id: str
    taxonomy_version: str
    answers: dict[str, str]  # item_id -> mitigation level name
    weights_source: str | None  # threat id of the bundle supplying weights
    created_at: str
    updated_at: str
    revision: int = 1


@dataclass(frozen=True)
class SurfaceRiskReport:
    surface_scores: dict[str, float]
    tactic_scores: dict[str, dict[str, float]]  # surface -> tactic -> sub-score
    overall: float
    warnings: tuple[str, ...] = ()


def generate_questionnaire(tax: Taxonomy) -> QuestionnaireTemplate:
    """One item per technique under the entry/propagation tactics, in
    taxonomy order; regenerating always yields an identical template."""
    items = []
    for tactic in tax.tactics:
        if tactic.id not in QUESTION_TACTICS:
            continue
        for tech in tactic.techniques:
            items.append(
                QuestionItem(
                    item_id=f"{tactic.id}/{tech.id}",
                    tactic_id=tactic.id,
                    technique_id=tech.id,
                    prompt=(
                        f"Which privacy measures are in place to mitigate "
                        f"“{tech.display_name}” during the {tactic.display_name} stage?"
                    ),
                )
            )
    return QuestionnaireTemplate(taxonomy_version=tax.version, items=tuple(items))


def _level_value(item_id: str, level: str) -> float:
    if level not in MITIGATION_LEVELS:
        raise UnknownItemError(f"item {item_id}: unknown mitigation level '{level}'")
    return MITIGATION_LEVELS[level]


def score_assessment(a: Assessment, fm: FrequencyMatrix | None, tax: Taxonomy) -> SurfaceRiskReport:
    """Surface risk scores from an answered questionnaire and expert weights."""
    if fm is None:
        raise MissingWeightsError("no frequency matrix supplied and no default bundle configured")
    template = generate_questionnaire(tax)
    item_ids = set(template.item_ids())
    for item_id in a.answers:
        if item_id not in item_ids:
            raise UnknownItemError(f"answer references unknown item '{item_id}'")

    warnings = []
    mitigation: dict[str, float] = {}
    for item in template.items:
        level = a.answers.get(item.item_id)
        if level is None:
            warnings.append(f"unanswered item '{item.item_id}' treated as mitigation=none")
            mitigation[item.item_id] = 0.0
        else:
            mitigation[item.item_id] = _level_value(item.item_id, level)

    all_surfaces = frozenset(tax.surface_ids())

    def surfaces_of(item_id: str) -> frozenset[str]:
        linked = fm.surface_links.get(item_id)
        return linked if linked else all_surfaces

    def weight(item_id: str) -> float:
        return 1.0 + fm.column_total(item_id)

    surface_scores: dict[str, float] = {}
    tactic_scores: dict[str, dict[str, float]] = {}
    surface_mass: dict[str, float] = {}
    for surface in tax.surface_ids():
        contributing = [i for i in template.items if surface in surfaces_of(i.item_id)]
        num = sum(weight(i.item_id) * (1.0 - mitigation[i.item_id]) for i in contributing)
        den = sum(weight(i.item_id) for i in contributing)
        if den == 0:
            warnings.append(f"surface '{surface}': no attributed techniques, score defaults to 0")
            surface_scores[surface] = 0.0
            surface_mass[surface] = 0.0
            tactic_scores[surface] = {}
            continue
        surface_scores[surface] = num / den
        surface_mass[surface] = den
        per_tactic: dict[str, float] = {}
        for tactic_id in QUESTION_TACTICS:
            in_tactic = [i for i in contributing if i.tactic_id == tactic_id]
            if not in_tactic:
                continue
            tnum = sum(weight(i.item_id) * (1.0 - mitigation[i.item_id]) for i in in_tactic)
            tden = sum(weight(i.item_id) for i in in_tactic)
            per_tactic[tactic_id] = tnum / tden
        tactic_scores[surface] = per_tactic

    total_mass = sum(surface_mass.values())
    overall = (
        sum(surface_mass[s] * surface_scores[s] for s in surface_scores) / total_mass if total_mass > 0 else 0.0
    )
    return SurfaceRiskReport(
        surface_scores=surface_scores,
        tactic_scores=tactic_scores,
        overall=overall,
        warnings=tuple(warnings),
    )


def what_if(
    a: Assessment,
    delta: dict[str, str],
    fm: FrequencyMatrix | None,
    tax: Taxonomy,
) -> tuple[SurfaceRiskReport, SurfaceRiskReport]:
    """(before, after) scores with ``delta`` overlaid; ``a`` is not modified."""
    template_ids = set(generate_questionnaire(tax).item_ids())
    for item_id, level in delta.items():
        if item_id not in template_ids:
            raise UnknownItemError(f"what-if references unknown item '{item_id}'")
        _level_value(item_id, level)
    before = score_assessment(a, fm, tax)
    overlay = replace(a, answers={**a.answers, **delta})
    after = score_assessment(overlay, fm, tax)
    return before, after


def aggregate_reports(reports: list[SurfaceRiskReport]) -> SurfaceRiskReport:
    """Mean across per-threat reports, for multi-threat assessments."""
    if not reports:
        raise MissingWeightsError("no reports to aggregate")
    surfaces = reports[0].surface_scores.keys()
    n = len(reports)
    return SurfaceRiskReport(
        surface_scores={s: sum(r.surface_scores.get(s, 0.0) for r in reports) / n for s in surfaces},
        tactic_scores={},
        overall=sum(r.overall for r in reports) / n,
        warnings=tuple(w for r in reports for w in r.warnings),
    )


# ---------------------------------------------------------------------------
# Persistence: one JSON document per assessment, atomic write-rename
# ---------------------------------------------------------------------------


def _now() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


class AssessmentStore:
    """Directory-backed store; file name is the assessment id.

    Writes are serialized by a revision check: an update carrying a stale
    revision raises RevisionConflictError.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _path(self, assessment_id: str) -> Path:
        if not assessment_id.replace("-", "").isalnum():
            raise DocumentFormatError(f"bad assessment id '{assessment_id}'")
        return self.directory / f"{assessment_id}.json"

    def create(self, taxonomy_version: str, weights_source: str | None = None) -> Assessment:
        now = _now()
        a = Assessment(
            assessment_id=uuid.uuid4().hex,
            taxonomy_version=taxonomy_version,
            answers={},
            weights_source=weights_source,
            created_at=now,
            updated_at=now,
        )
        with self._lock:
            self._write(a)
        return a

    def load(self, assessment_id: str) -> Assessment | None:
        path = self._path(assessment_id)
        if not path.exists():
            return None
        doc = json.loads(path.read_text("utf-8"))
        return Assessment(
            assessment_id=doc["assessment_id"],
            taxonomy_version=doc["taxonomy_version"],
            answers=dict(doc["answers"]),
            weights_source=doc.get("weights_source"),
            created_at=doc["created_at"],
            updated_at=doc["updated_at"],
            revision=doc["revision"],
        )

    def update_answers(self, assessment_id: str, answers: dict[str, str], expected_revision: int) -> Assessment:
        with self._lock:
            current = self.load(assessment_id)
            if current is None:
                raise KeyError(assessment_id)
            if current.revision != expected_revision:
                raise RevisionConflictError(assessment_id, current.revision, expected_revision)
            current.answers.update(answers)
            current.revision += 1
            current.updated_at = _now()
            self._write(current)
            return current

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def _write(self, a: Assessment) -> None:
        doc = {
            "assessment_id": a.assessment_id,
            "taxonomy_version": a.taxonomy_version,
            "answers": dict(sorted(a.answers.items())),
            "weights_source": a.weights_source,
            "created_at": a.created_at,
            "updated_at": a.updated_at,
            "revision": a.revision,
        }
        path = self._path(a.assessment_id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", "utf-8")
        os.replace(tmp, path)
