"""Data-driven threat-model vocabulary: actors, surfaces, phases, tactics, techniques, threats.

The vocabulary is loaded from a versioned JSON document so alternative
taxonomies can be swapped in without code changes. A default document is
bundled with the package.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import DocumentFormatError, ValidationError

# Fixed phase order; the two entry phases carry no tactics (actors and
# surfaces are modeled as top-level lists, not techniques).
PHASE_ORDER = (
    "threat_actor",
    "threat_surface",
    "threat_entry_point",
    "threat_propagation",
    "threat_result",
)

PHASE_TACTICS = {
    "threat_actor": (),
    "threat_surface": (),
    "threat_entry_point": ("reconnaissance", "initial_access"),
    "threat_propagation": ("credential_access", "discovery", "defense_evasion"),
    "threat_result": ("collection", "impact"),
}

# Tactics whose techniques feed the mitigation questionnaire.
QUESTION_TACTICS = (
    "reconnaissance",
    "initial_access",
    "credential_access",
    "discovery",
    "defense_evasion",
)

# Pseudo-group id used to key surface cells alongside tactic-qualified cells.
SURFACE_GROUP = "surface"

ACTOR_KINDS = ("individual", "group")


def slugify(name: str) -> str:
    """Canonical id form: lowercase snake_case of a display name."""
    s = name.lower().replace("'", "").replace("’", "")
    s = re.sub(r"[^a-z0-9]+", "_", s)
    return s.strip("_")


@dataclass(frozen=True)
class Technique:
    id: str
    display_name: str
    description: str | None = None


@dataclass(frozen=True)
class Tactic:
    id: str
    display_name: str
    techniques: tuple[Technique, ...]

    def technique_ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self.techniques)


@dataclass(frozen=True)
class Phase:
    id: str
    display_name: str
    tactics: tuple[Tactic, ...]


@dataclass(frozen=True)
class ThreatActor:
    id: str
    display_name: str
    kind: str  # "individual" | "group"


@dataclass(frozen=True)
class ThreatSurface:
    id: str
    display_name: str


@dataclass(frozen=True)
class PrivacyThreat:
    id: str
    name: str
    description: str


@dataclass(frozen=True)
class Taxonomy:
    """Immutable after load; safe to share across concurrent readers."""

    version: str
    actors: tuple[ThreatActor, ...]
    surfaces: tuple[ThreatSurface, ...]
    phases: tuple[Phase, ...]
    threats: tuple[PrivacyThreat, ...]

    # -- lookups ---------------------------------------------------------

    @property
    def tactics(self) -> tuple[Tactic, ...]:
        return tuple(t for p in self.phases for t in p.tactics)

    def tactic(self, tactic_id: str) -> Tactic | None:
        for t in self.tactics:
            if t.id == tactic_id:
                return t
        return None

    def actor_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.actors)

    def surface_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.surfaces)

    def threat_ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self.threats)

    def threat(self, threat_id: str) -> PrivacyThreat | None:
        for t in self.threats:
            if t.id == threat_id:
                return t
        return None

    def group_order(self) -> tuple[str, ...]:
        """Cell groups in display order: the surface pseudo-group, then tactics."""
        return (SURFACE_GROUP,) + tuple(t.id for t in self.tactics)

    def columns(self) -> tuple[str, ...]:
        """All qualified cell ids ("group/local_id") in taxonomy order."""
        cols = [f"{SURFACE_GROUP}/{s.id}" for s in self.surfaces]
        for tactic in self.tactics:
            cols.extend(f"{tactic.id}/{t.id}" for t in tactic.techniques)
        return tuple(cols)

    def display_name(self, qualified_id: str) -> str:
        """Human label for a qualified cell id or an actor id."""
        if "/" in qualified_id:
            group, local = qualified_id.split("/", 1)
            if group == SURFACE_GROUP:
                for s in self.surfaces:
                    if s.id == local:
                        return s.display_name
            else:
                tactic = self.tactic(group)
                if tactic is not None:
                    for t in tactic.techniques:
                        if t.id == local:
                            return t.display_name
            return qualified_id
        for a in self.actors:
            if a.id == qualified_id:
                return a.display_name
        return qualified_id


def validate_reference(tax: Taxonomy, kind: str, ref: str) -> bool:
    """True iff ``ref`` exists in the taxonomy under ``kind``.

    Techniques are resolved as tactic-qualified ids ("discovery/linked_data").
    Unknown kinds return False.
    """
    if kind == "actor":
        return ref in tax.actor_ids()
    if kind == "surface":
        return ref in tax.surface_ids()
    if kind == "tactic":
        return any(t.id == ref for t in tax.tactics)
    if kind == "technique":
        if "/" not in ref:
            return False
        tactic_id, tech_id = ref.split("/", 1)
        tactic = tax.tactic(tactic_id)
        return tactic is not None and tech_id in tactic.technique_ids()
    if kind == "threat":
        return ref in tax.threat_ids()
    return False


# ---------------------------------------------------------------------------
# Loading / serialization
# ---------------------------------------------------------------------------


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise DocumentFormatError(f"{where}: missing required key '{key}'")
    return obj[key]


def load_taxonomy(source) -> Taxonomy:
    """Parse and validate a taxonomy document.

    ``source`` may be JSON text, bytes, or a readable file object.
    Raises DocumentFormatError on malformed JSON (with line/position) and
    ValidationError when structural invariants fail; every validation
    message names the offending id.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as e:
        raise DocumentFormatError(f"malformed taxonomy document: {e.msg}", e.lineno, e.colno) from e
    if not isinstance(doc, dict):
        raise DocumentFormatError("taxonomy document must be a JSON object")

    version = _require(doc, "version", "taxonomy")
    problems: list[str] = []

    def check_unique(ids: list[str], kind: str):
        seen = set()
        for i in ids:
            if i in seen:
                problems.append(f"duplicate {kind} id: {i}")
            seen.add(i)

    actors = []
    for raw in _require(doc, "actors", "taxonomy"):
        actor = ThreatActor(
            id=_require(raw, "id", "actor"),
            display_name=_require(raw, "display_name", "actor"),
            kind=_require(raw, "kind", "actor"),
        )
        if actor.kind not in ACTOR_KINDS:
            problems.append(f"actor {actor.id}: unknown kind '{actor.kind}'")
        actors.append(actor)
    check_unique([a.id for a in actors], "actor")

    surfaces = []
    for raw in _require(doc, "surfaces", "taxonomy"):
        surfaces.append(
            ThreatSurface(id=_require(raw, "id", "surface"), display_name=_require(raw, "display_name", "surface"))
        )
    check_unique([s.id for s in surfaces], "surface")

    phases = []
    for raw in _require(doc, "phases", "taxonomy"):
        tactics = []
        for traw in raw.get("tactics", []):
            techniques = []
            for teraw in traw.get("techniques", []):
                tech = Technique(
                    id=_require(teraw, "id", "technique"),
                    display_name=_require(teraw, "display_name", "technique"),
                    description=teraw.get("description"),
                )
                if not tech.display_name:
                    problems.append(f"technique {tech.id}: empty display_name")
                techniques.append(tech)
            tactic = Tactic(
                id=_require(traw, "id", "tactic"),
                display_name=_require(traw, "display_name", "tactic"),
                techniques=tuple(techniques),
            )
            check_unique([t.id for t in techniques], f"technique in {tactic.id}")
            if not tactic.techniques:
                problems.append(f"{tactic.id}: empty technique list")
            tactics.append(tactic)
        phases.append(
            Phase(id=_require(raw, "id", "phase"), display_name=_require(raw, "display_name", "phase"), tactics=tuple(tactics))
        )

    phase_ids = [p.id for p in phases]
    if tuple(phase_ids) != PHASE_ORDER:
        problems.append(f"phase order must be {list(PHASE_ORDER)}, got {phase_ids}")
    else:
        for phase in phases:
            expected = PHASE_TACTICS[phase.id]
            got = tuple(t.id for t in phase.tactics)
            if got != expected:
                problems.append(f"phase {phase.id}: expected tactics {list(expected)}, got {list(got)}")
    check_unique([t.id for p in phases for t in p.tactics], "tactic")

    threats = []
    for raw in _require(doc, "threats", "taxonomy"):
        threats.append(
            PrivacyThreat(
                id=_require(raw, "id", "threat"),
                name=_require(raw, "name", "threat"),
                description=raw.get("description", ""),
            )
        )
    check_unique([t.id for t in threats], "threat")

    if problems:
        raise ValidationError(problems)
    return Taxonomy(
        version=version,
        actors=tuple(actors),
        surfaces=tuple(surfaces),
        phases=tuple(phases),
        threats=tuple(threats),
    )


def serialize_taxonomy(tax: Taxonomy) -> str:
    """Canonical JSON form; ``load_taxonomy(serialize_taxonomy(t)) == t``."""
    doc = {
        "version": tax.version,
        "actors": [{"id": a.id, "display_name": a.display_name, "kind": a.kind} for a in tax.actors],
        "surfaces": [{"id": s.id, "display_name": s.display_name} for s in tax.surfaces],
        "phases": [
            {
                "id": p.id,
                "display_name": p.display_name,
                "tactics": [
                    {
                        "id": t.id,
                        "display_name": t.display_name,
                        "techniques": [
                            {"id": te.id, "display_name": te.display_name}
                            | ({"description": te.description} if te.description else {})
                            for te in t.techniques
                        ],
                    }
                    for t in p.tactics
                ],
            }
            for p in tax.phases
        ],
        "threats": [{"id": t.id, "name": t.name, "description": t.description} for t in tax.threats],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


@lru_cache(maxsize=1)
def default_taxonomy() -> Taxonomy:
    """The built-in IoT privacy taxonomy bundled with the package."""
    text = resources.files("ptmf").joinpath("data/default_taxonomy.json").read_text("utf-8")
    return load_taxonomy(text)


def default_taxonomy_text() -> str:
    return resources.files("ptmf").joinpath("data/default_taxonomy.json").read_text("utf-8")
