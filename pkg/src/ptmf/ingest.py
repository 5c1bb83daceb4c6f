"""Survey-export parsing, cleaning, and demographic summaries.

The raw record format is newline-delimited JSON, one object per submission
(see README for the field reference and the CSV adapter column names).
Cleaning applies three ordered rules: reject blank qualifying summaries,
deduplicate participants keeping the latest submission, and drop actor
mappings that reference ids absent from the active taxonomy.

Everything here is pure over immutable inputs; disjoint record batches may
be parsed in parallel as long as deduplication runs as one final pass.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import DocumentFormatError, EmptyDatasetError
from .taxonomy import QUESTION_TACTICS, Taxonomy, validate_reference

EDUCATION_LEVELS = ("secondary", "undergraduate", "masters", "doctorate", "other")
SECTORS = ("academia", "industry", "both", "other")

MIN_THREAT_SELECTIONS = 6

CSV_COLUMNS = (
    "participant_id",
    "submitted_at",
    "country",
    "education",
    "sector",
    "years_experience",
    "security_skill_pct",
    "privacy_skill_pct",
    "qualifying_summary",
    "threat_id",
    "actor_id",
    "group_id",
    "item_id",
)


@dataclass(frozen=True)
class ParticipantProfile:
    participant_id: str
    country: str
    education: str
    sector: str
    years_experience: float
    security_skill_pct: float
    privacy_skill_pct: float


@dataclass(frozen=True)
class ActorMapping:
    actor_id: str
    surface_ids: frozenset[str] = frozenset()
    techniques: tuple[tuple[str, frozenset[str]], ...] = ()  # (tactic_id, technique ids)
    collection_ids: frozenset[str] = frozenset()
    impact_ids: frozenset[str] = frozenset()

    def techniques_by_tactic(self) -> dict[str, frozenset[str]]:
        return dict(self.techniques)


@dataclass(frozen=True)
class SurveyResponse:
    participant: ParticipantProfile
    submitted_at: datetime
    qualifying_summary: str
    threat_selections: tuple[tuple[str, tuple[ActorMapping, ...]], ...]

    def selections(self) -> dict[str, tuple[ActorMapping, ...]]:
        return dict(self.threat_selections)


@dataclass
class RawRecord:
    """A structurally parsed submission, prior to cleaning."""

    line: int
    response: SurveyResponse


@dataclass
class CleanDataset:
    taxonomy_version: str
    responses: list[SurveyResponse]
    rejected: list[tuple[str, str]] = field(default_factory=list)  # (record ref, reason)
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class DemographicSummary:
    participant_count: int
    country_pct: dict[str, float]
    education_pct: dict[str, float]
    sector_pct: dict[str, float]
    experience_pct: dict[str, float]  # bucketed years of experience
    mean_years_experience: float
    mean_security_skill: float
    mean_privacy_skill: float


def _experience_bucket(years: float) -> str:
    if years < 3:
        return "0-2"
    if years <= 6:
        return "3-6"
    if years <= 10:
        return "7-10"
    return "11+"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_timestamp(value, line: int) -> datetime:
    if not isinstance(value, str):
        raise DocumentFormatError("submitted_at must be an ISO-8601 string", line)
    text = value.replace("Z", "+00:00")
    try:
        ts = datetime.fromisoformat(text)
    except ValueError as e:
        raise DocumentFormatError(f"bad submitted_at '{value}': {e}", line) from e
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _parse_profile(raw, line: int) -> ParticipantProfile:
    if not isinstance(raw, dict):
        raise DocumentFormatError("participant must be an object", line)

    def need(key):
        if key not in raw:
            raise DocumentFormatError(f"participant missing '{key}'", line)
        return raw[key]

    def number(key, lo=None, hi=None):
        v = need(key)
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise DocumentFormatError(f"participant {key} must be a number", line)
        if lo is not None and v < lo or hi is not None and v > hi:
            raise DocumentFormatError(f"participant {key}={v} outside [{lo}, {hi}]", line)
        return float(v)

    education = need("education")
    sector = need("sector")
    if education not in EDUCATION_LEVELS:
        raise DocumentFormatError(f"unknown education level '{education}'", line)
    if sector not in SECTORS:
        raise DocumentFormatError(f"unknown sector '{sector}'", line)
    return ParticipantProfile(
        participant_id=str(need("participant_id")),
        country=str(need("country")),
        education=education,
        sector=sector,
        years_experience=number("years_experience", lo=0),
        security_skill_pct=number("security_skill_pct", 0, 100),
        privacy_skill_pct=number("privacy_skill_pct", 0, 100),
    )


def _parse_mapping(raw, line: int) -> ActorMapping:
    if not isinstance(raw, dict) or "actor_id" not in raw:
        raise DocumentFormatError("actor mapping missing 'actor_id'", line)
    techniques = raw.get("techniques", {})
    if not isinstance(techniques, dict):
        raise DocumentFormatError("actor mapping 'techniques' must be an object", line)
    return ActorMapping(
        actor_id=str(raw["actor_id"]),
        surface_ids=frozenset(map(str, raw.get("surfaces", []))),
        techniques=tuple(sorted((str(k), frozenset(map(str, v))) for k, v in techniques.items())),
        collection_ids=frozenset(map(str, raw.get("collections", []))),
        impact_ids=frozenset(map(str, raw.get("impacts", []))),
    )


def _mapping_diagnostics(m: ActorMapping, threat_id: str, tax: Taxonomy) -> list[str]:
    """Unresolved-reference messages for one actor mapping (empty when clean)."""
    out = []
    if not validate_reference(tax, "actor", m.actor_id):
        out.append(f"unknown actor '{m.actor_id}'")
    for s in sorted(m.surface_ids):
        if not validate_reference(tax, "surface", s):
            out.append(f"unknown surface '{s}'")
    for tactic_id, techs in m.techniques:
        if tactic_id not in QUESTION_TACTICS:
            out.append(f"techniques keyed by non-entry/propagation tactic '{tactic_id}'")
            continue
        for t in sorted(techs):
            if not validate_reference(tax, "technique", f"{tactic_id}/{t}"):
                out.append(f"unknown technique '{tactic_id}/{t}'")
    for c in sorted(m.collection_ids):
        if not validate_reference(tax, "technique", f"collection/{c}"):
            out.append(f"unknown collection item '{c}'")
    for i in sorted(m.impact_ids):
        if not validate_reference(tax, "technique", f"impact/{i}"):
            out.append(f"unknown impact item '{i}'")
    return [f"threat {threat_id}, actor {m.actor_id}: {msg}" for msg in out]


def _record_from_obj(obj: dict, line: int) -> RawRecord:
    for key in ("participant", "submitted_at", "qualifying_summary", "threats"):
        if key not in obj:
            raise DocumentFormatError(f"record missing '{key}'", line)
    if not isinstance(obj["threats"], list):
        raise DocumentFormatError("'threats' must be an array", line)
    selections = []
    for th in obj["threats"]:
        if not isinstance(th, dict) or "threat_id" not in th:
            raise DocumentFormatError("threat entry missing 'threat_id'", line)
        mappings = tuple(_parse_mapping(a, line) for a in th.get("actors", []))
        selections.append((str(th["threat_id"]), mappings))
    response = SurveyResponse(
        participant=_parse_profile(obj["participant"], line),
        submitted_at=parse_timestamp(obj["submitted_at"], line),
        qualifying_summary=str(obj["qualifying_summary"]),
        threat_selections=tuple(selections),
    )
    return RawRecord(line=line, response=response)


def parse_responses(source, tax: Taxonomy) -> tuple[list[RawRecord], list[str]]:
    """Parse newline-delimited survey records.

    Structural problems (bad JSON, missing fields, out-of-range numbers)
    raise DocumentFormatError with the offending line. References that do
    not resolve in ``tax`` are reported as diagnostics, one message per
    problem; the record itself is retained.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")

    records: list[RawRecord] = []
    diagnostics: list[str] = []
    for line_no, line in enumerate(source.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise DocumentFormatError(f"malformed record: {e.msg}", line_no, e.colno) from e
        if not isinstance(obj, dict):
            raise DocumentFormatError("record must be a JSON object", line_no)
        record = _record_from_obj(obj, line_no)
        records.append(record)
        pid = record.response.participant.participant_id
        for threat_id, mappings in record.response.threat_selections:
            for m in mappings:
                for msg in _mapping_diagnostics(m, threat_id, tax):
                    diagnostics.append(f"line {record.line} (participant {pid}): {msg}")
    return records, diagnostics


def read_csv_responses(source, tax: Taxonomy) -> tuple[list[RawRecord], list[str]]:
    """CSV adapter: one row per (participant, threat, actor, group, item) tuple.

    Columns are fixed (see CSV_COLUMNS). ``group_id`` is either "surface"
    or a tactic id; ``item_id`` is the unqualified id within that group.
    Rows are grouped by (participant_id, submitted_at) into records.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    reader = csv.DictReader(io.StringIO(source))
    if reader.fieldnames is None:
        return [], []
    missing = [c for c in CSV_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise DocumentFormatError(f"CSV header missing columns: {', '.join(missing)}", 1)

    # (pid, submitted_at) -> {profile fields, threats: {tid: {actor: cells}}}
    groups: dict[tuple[str, str], dict] = {}
    order: list[tuple[str, str]] = []
    for row_no, row in enumerate(reader, start=2):
        key = (row["participant_id"], row["submitted_at"])
        if key not in groups:
            groups[key] = {"row": row_no, "first": row, "threats": {}}
            order.append(key)
        g = groups[key]
        tid = row["threat_id"]
        actors = g["threats"].setdefault(tid, {})
        cells = actors.setdefault(
            row["actor_id"], {"surfaces": set(), "techniques": {}, "collections": set(), "impacts": set()}
        )
        group_id, item = row["group_id"], row["item_id"]
        if not item:
            continue  # actor selected with no detail
        if group_id == "surface":
            cells["surfaces"].add(item)
        elif group_id == "collection":
            cells["collections"].add(item)
        elif group_id == "impact":
            cells["impacts"].add(item)
        else:
            cells["techniques"].setdefault(group_id, set()).add(item)

    lines = []
    for key in order:
        g = groups[key]
        row = g["first"]

        def num(col):
            try:
                return float(row[col])
            except ValueError:
                raise DocumentFormatError(f"non-numeric {col}: '{row[col]}'", g["row"]) from None

        obj = {
            "participant": {
                "participant_id": row["participant_id"],
                "country": row["country"],
                "education": row["education"],
                "sector": row["sector"],
                "years_experience": num("years_experience"),
                "security_skill_pct": num("security_skill_pct"),
                "privacy_skill_pct": num("privacy_skill_pct"),
            },
            "submitted_at": row["submitted_at"],
            "qualifying_summary": row["qualifying_summary"],
            "threats": [
                {
                    "threat_id": tid,
                    "actors": [
                        {
                            "actor_id": actor_id,
                            "surfaces": sorted(cells["surfaces"]),
                            "techniques": {k: sorted(v) for k, v in sorted(cells["techniques"].items())},
                            "collections": sorted(cells["collections"]),
                            "impacts": sorted(cells["impacts"]),
                        }
                        for actor_id, cells in actors.items()
                    ],
                }
                for tid, actors in g["threats"].items()
            ],
        }
        lines.append(json.dumps(obj, ensure_ascii=False))
    return parse_responses("\n".join(lines), tax)


# ---------------------------------------------------------------------------
# Cleaning
# ---------------------------------------------------------------------------


def _record_ref(r: RawRecord) -> str:
    return f"line {r.line} (participant {r.response.participant.participant_id})"


def clean(records: list[RawRecord], tax: Taxonomy) -> CleanDataset:
    """Apply the ordered cleaning rules and return the validated corpus.

    1. Reject records whose qualifying summary is empty or whitespace.
    2. Deduplicate by participant id, keeping the latest submission.
    3. Drop individual actor mappings containing unresolvable ids (warning).
    4. Flag participants selecting fewer than MIN_THREAT_SELECTIONS threats.

    Every input record lands in exactly one of responses/rejected.
    """
    ds = CleanDataset(taxonomy_version=tax.version, responses=[])

    # Rule 1: qualifying question.
    qualified: list[RawRecord] = []
    for r in records:
        if not r.response.qualifying_summary.strip():
            ds.rejected.append((_record_ref(r), "failed qualifying question (blank summary)"))
        else:
            qualified.append(r)

    # Rule 2: dedup by participant, keep latest submitted_at (input order
    # breaks exact-timestamp ties in favor of the later record).
    latest: dict[str, RawRecord] = {}
    for r in qualified:
        pid = r.response.participant.participant_id
        prev = latest.get(pid)
        if prev is None:
            latest[pid] = r
        elif r.response.submitted_at >= prev.response.submitted_at:
            ds.rejected.append((_record_ref(prev), f"duplicate participant '{pid}': superseded by later submission"))
            latest[pid] = r
        else:
            ds.rejected.append((_record_ref(r), f"duplicate participant '{pid}': earlier than retained submission"))

    # Rules 3-4, in input order of the retained record.
    for r in qualified:
        pid = r.response.participant.participant_id
        if latest.get(pid) is not r:
            continue
        resp = r.response

        selections: list[tuple[str, tuple[ActorMapping, ...]]] = []
        for threat_id, mappings in resp.threat_selections:
            if not validate_reference(tax, "threat", threat_id):
                ds.warnings.append(f"participant {pid}: dropped selection of unknown threat '{threat_id}'")
                continue
            merged: dict[str, ActorMapping] = {}
            for m in mappings:
                problems = _mapping_diagnostics(m, threat_id, tax)
                if problems:
                    for msg in problems:
                        ds.warnings.append(f"participant {pid}: dropped mapping with {msg}")
                    continue
                if m.actor_id in merged:
                    ds.warnings.append(
                        f"participant {pid}: merged duplicate mapping of actor '{m.actor_id}' under threat {threat_id}"
                    )
                    prev = merged[m.actor_id]
                    techs: dict[str, frozenset[str]] = dict(prev.techniques)
                    for tactic_id, ts in m.techniques:
                        techs[tactic_id] = techs.get(tactic_id, frozenset()) | ts
                    merged[m.actor_id] = ActorMapping(
                        actor_id=m.actor_id,
                        surface_ids=prev.surface_ids | m.surface_ids,
                        techniques=tuple(sorted(techs.items())),
                        collection_ids=prev.collection_ids | m.collection_ids,
                        impact_ids=prev.impact_ids | m.impact_ids,
                    )
                else:
                    merged[m.actor_id] = m
            selections.append((threat_id, tuple(merged.values())))

        if len(selections) < MIN_THREAT_SELECTIONS:
            ds.warnings.append(
                f"participant {pid}: below minimum threat count ({len(selections)} < {MIN_THREAT_SELECTIONS})"
            )
        ds.responses.append(
            SurveyResponse(
                participant=resp.participant,
                submitted_at=resp.submitted_at,
                qualifying_summary=resp.qualifying_summary,
                threat_selections=tuple(selections),
            )
        )
    return ds


# ---------------------------------------------------------------------------
# Summaries
# ---------------------------------------------------------------------------


def _distribution(values: list[str]) -> dict[str, float]:
    counts: dict[str, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    total = len(values)
    return {k: round(100.0 * c / total, 1) for k, c in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))}


def summarize_demographics(ds: CleanDataset) -> DemographicSummary:
    if not ds.responses:
        raise EmptyDatasetError("no retained responses to summarize")
    profiles = [r.participant for r in ds.responses]
    n = len(profiles)
    return DemographicSummary(
        participant_count=n,
        country_pct=_distribution([p.country for p in profiles]),
        education_pct=_distribution([p.education for p in profiles]),
        sector_pct=_distribution([p.sector for p in profiles]),
        experience_pct=_distribution([_experience_bucket(p.years_experience) for p in profiles]),
        mean_years_experience=sum(p.years_experience for p in profiles) / n,
        mean_security_skill=sum(p.security_skill_pct for p in profiles) / n,
        mean_privacy_skill=sum(p.privacy_skill_pct for p in profiles) / n,
    )


def threat_participation(ds: CleanDataset, tax: Taxonomy) -> dict[str, int]:
    """Retained participants per threat, zero-filled over the taxonomy."""
    counts = {t: 0 for t in tax.threat_ids()}
    for r in ds.responses:
        for threat_id, _ in r.threat_selections:
            if threat_id in counts:
                counts[threat_id] += 1
    return counts


# ---------------------------------------------------------------------------
# CleanDataset (de)serialization for the file-based pipeline
# ---------------------------------------------------------------------------


def _mapping_to_obj(m: ActorMapping) -> dict:
    return {
        "actor_id": m.actor_id,
        "surfaces": sorted(m.surface_ids),
        "techniques": {k: sorted(v) for k, v in m.techniques},
        "collections": sorted(m.collection_ids),
        "impacts": sorted(m.impact_ids),
    }


def dataset_to_json(ds: CleanDataset) -> str:
    doc = {
        "taxonomy_version": ds.taxonomy_version,
        "responses": [
            {
                "participant": vars(r.participant),
                "submitted_at": r.submitted_at.isoformat().replace("+00:00", "Z"),
                "qualifying_summary": r.qualifying_summary,
                "threats": [
                    {"threat_id": tid, "actors": [_mapping_to_obj(m) for m in mappings]}
                    for tid, mappings in r.threat_selections
                ],
            }
            for r in ds.responses
        ],
        "rejected": [{"record": ref, "reason": reason} for ref, reason in ds.rejected],
        "warnings": list(ds.warnings),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def dataset_from_json(text: str) -> CleanDataset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentFormatError(f"malformed dataset document: {e.msg}", e.lineno, e.colno) from e
    if not isinstance(doc, dict) or "taxonomy_version" not in doc or "responses" not in doc:
        raise DocumentFormatError("not a clean-dataset document (expected taxonomy_version + responses)")
    responses = []
    for i, raw in enumerate(doc["responses"], start=1):
        responses.append(_record_from_obj(raw, i).response)
    return CleanDataset(
        taxonomy_version=doc["taxonomy_version"],
        responses=responses,
        rejected=[(r["record"], r["reason"]) for r in doc.get("rejected", [])],
        warnings=list(doc.get("warnings", [])),
    )
