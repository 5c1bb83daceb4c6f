import json

import pytest

from ptmf.errors import DocumentFormatError, ValidationError
from ptmf.taxonomy import (
    default_taxonomy,
    default_taxonomy_text,
    load_taxonomy,
    serialize_taxonomy,
    slugify,
    validate_reference,
)


def test_default_counts(tax):
    assert len(tax.actors) == 8
    assert len(tax.surfaces) == 4
    assert len(tax.tactics) == 7
    assert len(tax.threats) == 12


def test_default_actor_kinds(tax):
    kinds = {a.id: a.kind for a in tax.actors}
    assert kinds == {
        "skilled_insider": "individual",
        "skilled_outsider": "individual",
        "unskilled_insider": "individual",
        "cloud_provider": "group",
        "service_provider": "group",
        "third_party_provider": "group",
        "government_authority": "group",
        "security_agent": "group",
    }


def test_default_surfaces(tax):
    assert tax.surface_ids() == ("communication_link", "data_storage", "smart_devices", "user_user_device")


def test_phase_structure(tax):
    assert [p.id for p in tax.phases] == [
        "threat_actor",
        "threat_surface",
        "threat_entry_point",
        "threat_propagation",
        "threat_result",
    ]
    by_phase = {p.id: [t.id for t in p.tactics] for p in tax.phases}
    assert by_phase["threat_entry_point"] == ["reconnaissance", "initial_access"]
    assert by_phase["threat_propagation"] == ["credential_access", "discovery", "defense_evasion"]
    assert by_phase["threat_result"] == ["collection", "impact"]


def test_reconnaissance_vocabulary(tax):
    recon = tax.tactic("reconnaissance")
    names = {t.display_name for t in recon.techniques}
    assert {
        "Collection of users' information",
        "Vulnerability scanning of IoT network",
        "Gathering of IoT network function",
        "Searching open technical database for digital certificates",
    } <= names


def test_vocabulary_spot_checks(tax):
    assert "Vulnerability scanning of IoT network" in {t.display_name for t in tax.tactic("reconnaissance").techniques}
    assert "Improper personal data management" in {t.display_name for t in tax.tactic("defense_evasion").techniques}
    assert "Linked data" in {t.display_name for t in tax.tactic("discovery").techniques}


def test_threat_ids_and_names(tax):
    assert tax.threat_ids() == tuple(f"T{i}" for i in range(1, 13))
    assert tax.threat("T1").name == "Identification of IoT User"
    assert tax.threat("T12").name == "Utility Monitoring and Controlling"


def test_serialize_round_trip(tax):
    assert load_taxonomy(serialize_taxonomy(tax)) == tax
    # canonical form is byte-stable
    assert serialize_taxonomy(load_taxonomy(serialize_taxonomy(tax))) == serialize_taxonomy(tax)
    # and the shipped file is already canonical
    assert default_taxonomy_text() == serialize_taxonomy(tax)


def test_ordering_stable_across_loads(tax):
    again = load_taxonomy(default_taxonomy_text())
    assert again.columns() == tax.columns()
    assert [t.id for t in again.tactics] == [t.id for t in tax.tactics]


def test_validate_reference(tax):
    assert validate_reference(tax, "actor", "cloud_provider")
    assert not validate_reference(tax, "actor", "martian")
    assert validate_reference(tax, "technique", "discovery/linked_data")
    assert not validate_reference(tax, "technique", "linked_data")  # must be qualified
    assert validate_reference(tax, "surface", "data_storage")
    assert validate_reference(tax, "tactic", "collection")
    assert validate_reference(tax, "threat", "T7")
    assert not validate_reference(tax, "flavor", "anything")  # unknown kind


def test_empty_tactic_rejected(tax):
    doc = json.loads(default_taxonomy_text())
    for phase in doc["phases"]:
        for tactic in phase["tactics"]:
            if tactic["id"] == "discovery":
                tactic["techniques"] = []
    with pytest.raises(ValidationError, match="discovery: empty technique list"):
        load_taxonomy(json.dumps(doc))


def test_duplicate_actor_rejected(tax):
    doc = json.loads(default_taxonomy_text())
    doc["actors"].append({"id": "cloud_provider", "display_name": "Cloud Provider 2", "kind": "group"})
    with pytest.raises(ValidationError, match="cloud_provider"):
        load_taxonomy(json.dumps(doc))


def test_wrong_phase_order_rejected():
    doc = json.loads(default_taxonomy_text())
    doc["phases"].reverse()
    with pytest.raises(ValidationError, match="phase order"):
        load_taxonomy(json.dumps(doc))


def test_malformed_json_reports_position():
    with pytest.raises(DocumentFormatError, match="line 1"):
        load_taxonomy("{not json")


def test_missing_key_rejected():
    with pytest.raises(DocumentFormatError, match="version"):
        load_taxonomy(json.dumps({"actors": [], "surfaces": [], "phases": [], "threats": []}))


def test_slugify():
    assert slugify("Users' behavior data") == "users_behavior_data"
    assert slugify("Third-Party Provider") == "third_party_provider"
    assert slugify("Detection through trans(action) side effect") == "detection_through_trans_action_side_effect"
    assert slugify("User/User Device") == "user_user_device"


def test_default_is_cached():
    assert default_taxonomy() is default_taxonomy()


def test_columns_cover_all_techniques(tax):
    n_techs = sum(len(t.techniques) for t in tax.tactics)
    assert len(tax.columns()) == n_techs + len(tax.surfaces)
    assert tax.columns()[0].startswith("surface/")
