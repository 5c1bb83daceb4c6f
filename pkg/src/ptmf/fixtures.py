"""Deterministic example survey corpus for tests, demos, and dashboard seeds.

Twenty synthetic experts, each selecting six threats. The cell-count plan
for threat T1 and the per-threat actor rows below are chosen so the derived
analytics land on known reference rankings (see tests); counts are realized
by assigning each cell to a prefix of the participants who selected the
actor, so aggregation reproduces the plan exactly.
"""

from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone

PARTICIPANT_COUNT = 20

_COUNTRIES = ["Canada"] * 13 + ["United States"] * 6 + ["United Kingdom"]
_EDUCATION = ["masters"] * 6 + ["doctorate"] * 4 + ["masters"] * 6 + ["doctorate"] * 3 + ["undergraduate"]
_SECTORS = ["academia", "industry"] * 9 + ["both", "both"]
_YEARS = [3, 4, 5, 6, 3, 4, 5, 6, 3, 4, 5, 6, 3, 4, 2, 7, 8, 10, 12, 15]

_SUMMARIES = [
    "Splitting actors by tactic made the propagation stages much clearer to me.",
    "I had not considered how often benign providers surface as privacy risks.",
    "The entry-point versus propagation distinction sharpened my mental model.",
    "Useful exercise; mapping collection targets per actor was the hardest part.",
]

_BASE_TIME = datetime(2025, 3, 1, 10, 0, 0, tzinfo=timezone.utc)

# ---------------------------------------------------------------------------
# T1 cell plan: actor -> (participant count, {qualified cell -> count})
# ---------------------------------------------------------------------------

T1_PLAN: dict[str, tuple[int, dict[str, int]]] = {
    "cloud_provider": (18, {
        "surface/data_storage": 16, "surface/user_user_device": 7,
        "surface/communication_link": 4, "surface/smart_devices": 3,
        "reconnaissance/collection_of_users_information": 17,
        "reconnaissance/vulnerability_scanning_of_iot_network": 6,
        "reconnaissance/gathering_of_iot_network_function": 4,
        "reconnaissance/searching_open_technical_database_for_digital_certificates": 2,
        "initial_access/access_through_the_gateway": 14,
        "initial_access/access_through_the_cloud_provider": 14,
        "initial_access/access_through_the_iot_layer": 7,
        "initial_access/access_through_the_third_party_provider": 4,
        "initial_access/through_stolen_user_or_device_login_credentials": 3,
        "credential_access/unnecessary_processing": 15,
        "credential_access/involved_parties_and_exposure": 8,
        "credential_access/excessive_volume": 5,
        "credential_access/unnecessary_data_types": 3,
        "discovery/linked_data": 16, "discovery/linkable_data": 7,
        "discovery/identified_information": 4, "discovery/identifiable_information": 3,
        "discovery/detection_through_trans_action_side_effect": 2,
        "defense_evasion/improper_personal_data_management": 15,
        "defense_evasion/unawareness_of_processing_data": 8,
        "defense_evasion/lack_of_data_subject_control": 6,
        "defense_evasion/regulatory_non_compliance": 4,
        "collection/users_behavior_data": 15, "collection/location_information": 15,
        "collection/device_identifiers": 7, "collection/communication_patterns": 5,
        "impact/invasion_of_online_privacy": 15, "impact/misuse_of_sensitive_information": 15,
        "impact/unwanted_tracking": 6, "impact/unauthorized_access": 3,
    }),
    "service_provider": (16, {
        "surface/user_user_device": 8, "surface/communication_link": 4, "surface/data_storage": 3,
        "reconnaissance/collection_of_users_information": 7,
        "reconnaissance/vulnerability_scanning_of_iot_network": 7,
        "reconnaissance/gathering_of_iot_network_function": 4,
        "reconnaissance/searching_open_technical_database_for_digital_certificates": 2,
        "initial_access/access_through_the_gateway": 7,
        "initial_access/access_through_the_iot_layer": 7,
        "initial_access/access_through_the_cloud_provider": 3,
        "credential_access/involved_parties_and_exposure": 8,
        "credential_access/unnecessary_processing": 4,
        "credential_access/excessive_volume": 2,
        "discovery/linked_data": 7, "discovery/detection_through_trans_action_side_effect": 7,
        "discovery/linkable_data": 4,
        "defense_evasion/lack_of_data_subject_control": 7,
        "defense_evasion/regulatory_non_compliance": 7,
        "defense_evasion/improper_personal_data_management": 7,
        "defense_evasion/unawareness_of_processing_data": 3,
        "collection/communication_patterns": 8, "collection/users_behavior_data": 8,
        "collection/location_information": 5,
        "impact/invasion_of_online_privacy": 8, "impact/unwanted_tracking": 8,
        "impact/misuse_of_sensitive_information": 4,
    }),
    "third_party_provider": (14, {
        "surface/user_user_device": 6, "surface/smart_devices": 3,
        "reconnaissance/collection_of_users_information": 6,
        "reconnaissance/gathering_of_iot_network_function": 2,
        "initial_access/through_stolen_user_or_device_login_credentials": 5,
        "initial_access/access_through_the_third_party_provider": 3,
        "credential_access/involved_parties_and_exposure": 5,
        "credential_access/unnecessary_data_types": 2,
        "discovery/linked_data": 5, "discovery/detection_through_trans_action_side_effect": 3,
        "defense_evasion/lack_of_data_subject_control": 4,
        "defense_evasion/regulatory_non_compliance": 4,
        "defense_evasion/improper_personal_data_management": 2,
        "collection/location_information": 5, "collection/users_behavior_data": 2,
        "impact/financial_fraud": 4, "impact/invasion_of_online_privacy": 3,
    }),
    "skilled_outsider": (12, {
        "surface/communication_link": 10, "surface/smart_devices": 5, "surface/data_storage": 3,
        "reconnaissance/collection_of_users_information": 8,
        "reconnaissance/vulnerability_scanning_of_iot_network": 8,
        "reconnaissance/gathering_of_iot_network_function": 8,
        "reconnaissance/searching_open_technical_database_for_digital_certificates": 8,
        "initial_access/through_stolen_user_or_device_login_credentials": 11,
        "initial_access/access_through_the_gateway": 4,
        "initial_access/access_through_the_iot_layer": 3,
        "credential_access/unnecessary_processing": 9,
        "credential_access/involved_parties_and_exposure": 4,
        "credential_access/excessive_volume": 3,
        "discovery/linked_data": 8, "discovery/identified_information": 8,
        "discovery/detection_through_trans_action_side_effect": 8,
        "discovery/linkable_data": 5, "discovery/identifiable_information": 2,
        "defense_evasion/lack_of_data_subject_control": 10,
        "defense_evasion/improper_personal_data_management": 6,
        "defense_evasion/insufficient_cybersecurity_risk_management": 3,
        "collection/location_information": 11, "collection/device_identifiers": 5,
        "collection/financial_data": 3,
        "impact/unauthorized_access": 11, "impact/identity_theft": 6,
        "impact/misuse_of_sensitive_information": 4,
    }),
    "government_authority": (8, {
        "surface/data_storage": 4,
        "reconnaissance/collection_of_users_information": 4,
        "initial_access/access_through_the_cloud_provider": 3,
        "credential_access/unnecessary_processing": 3,
        "discovery/identifiable_information": 3,
        "defense_evasion/insufficient_cybersecurity_risk_management": 3,
        "collection/location_information": 4,
        "impact/unwanted_tracking": 3, "impact/unauthorized_access": 2,
    }),
    "security_agent": (6, {
        "surface/user_user_device": 3,
        "reconnaissance/collection_of_users_information": 3,
        "initial_access/access_through_the_iot_layer": 2,
        "credential_access/unnecessary_data_types": 2,
        "discovery/linkable_data": 2,
        "defense_evasion/unawareness_of_processing_data": 2,
        "collection/audio_recording_and_video_capture": 3,
        "impact/unauthorized_access": 2,
    }),
    "skilled_insider": (5, {
        "surface/smart_devices": 3,
        "reconnaissance/collection_of_users_information": 3,
        "initial_access/through_stolen_user_or_device_login_credentials": 3,
        "credential_access/unnecessary_processing": 2,
        "discovery/linked_data": 3,
        "defense_evasion/improper_personal_data_management": 2,
        "collection/users_behavior_data": 2,
        "impact/identity_theft": 2, "impact/misuse_of_sensitive_information": 2,
    }),
    "unskilled_insider": (3, {
        "surface/smart_devices": 2,
        "reconnaissance/vulnerability_scanning_of_iot_network": 2,
        "initial_access/access_through_the_gateway": 1,
        "credential_access/excessive_volume": 1,
        "discovery/linkable_data": 1,
        "defense_evasion/insufficient_cybersecurity_risk_management": 1,
        "collection/audio_recording_and_video_capture": 1,
        "impact/misuse_of_sensitive_information": 1,
    }),
}

# ---------------------------------------------------------------------------
# Per-threat actor rows for T2-T12 (prominence order). Every listed cell of
# an actor is answered by all participants assigned to that actor, so the
# whole row ties at the actor's count and becomes its critical path.
# ---------------------------------------------------------------------------

_ROW = dict  # alias to keep the table compact

THREAT_ROWS: dict[str, list[tuple[str, dict[str, list[str]]]]] = {
    "T2": [
        ("third_party_provider", _ROW(
            surface=["smart_devices", "user_user_device"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["involved_parties_and_exposure"],
            discovery=["linked_data", "detection_through_trans_action_side_effect"],
            defense_evasion=["lack_of_data_subject_control", "regulatory_non_compliance",
                             "improper_personal_data_management"],
            collection=["location_information"],
            impact=["financial_fraud"])),
        ("skilled_insider", _ROW(
            surface=["user_user_device"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["unnecessary_processing"],
            discovery=["linked_data"],
            defense_evasion=["improper_personal_data_management", "insufficient_cybersecurity_risk_management"],
            collection=["location_information", "users_behavior_data"],
            impact=["misuse_of_sensitive_information", "identity_theft"])),
        ("skilled_outsider", _ROW(
            surface=["smart_devices", "user_user_device"],
            reconnaissance=["searching_open_technical_database_for_digital_certificates",
                            "vulnerability_scanning_of_iot_network"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["excessive_volume", "unnecessary_data_types"],
            discovery=["linked_data"],
            defense_evasion=["unawareness_of_processing_data", "lack_of_data_subject_control",
                             "improper_personal_data_management"],
            collection=["location_information"],
            impact=["invasion_of_online_privacy", "misuse_of_sensitive_information", "financial_fraud"])),
    ],
    "T3": [
        ("skilled_outsider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["gathering_of_iot_network_function", "vulnerability_scanning_of_iot_network"],
            initial_access=["access_through_the_iot_layer"],
            credential_access=["involved_parties_and_exposure"],
            discovery=["linked_data"],
            defense_evasion=["regulatory_non_compliance", "insufficient_cybersecurity_risk_management"],
            collection=["users_behavior_data", "location_information"],
            impact=["health_information_exposure"])),
        ("security_agent", _ROW(
            surface=["smart_devices", "user_user_device"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["access_through_the_iot_layer"],
            credential_access=["unnecessary_data_types"],
            discovery=["linkable_data", "attributable_data_evidence", "linked_data"],
            defense_evasion=["unawareness_of_processing_data", "lack_of_data_subject_control",
                             "improper_personal_data_management", "insufficient_cybersecurity_risk_management"],
            collection=["device_identifiers", "location_information", "audio_recording_and_video_capture"],
            impact=["invasion_of_online_privacy", "unwanted_tracking"])),
        ("third_party_provider", _ROW(
            surface=["user_user_device"],
            reconnaissance=["gathering_of_iot_network_function", "collection_of_users_information"],
            initial_access=["access_through_the_third_party_provider"],
            credential_access=["involved_parties_and_exposure"],
            discovery=["linked_data", "linkable_data"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "regulatory_non_compliance"],
            collection=["location_information"],
            impact=["invasion_of_online_privacy"])),
    ],
    "T4": [
        ("service_provider", _ROW(
            surface=["smart_devices", "user_user_device"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["access_through_the_gateway"],
            credential_access=["excessive_volume"],
            discovery=["linkable_data"],
            defense_evasion=["lack_of_data_subject_control"],
            collection=["location_information"],
            impact=["invasion_of_online_privacy", "unwanted_tracking", "environment_profiling"])),
        ("third_party_provider", _ROW(
            surface=["user_user_device"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["access_through_the_gateway"],
            credential_access=["unnecessary_data_types", "involved_parties_and_exposure"],
            discovery=["linked_data"],
            defense_evasion=["lack_of_data_subject_control"],
            collection=["location_information"],
            impact=["invasion_of_online_privacy"])),
        ("skilled_insider", _ROW(
            surface=["data_storage"],
            reconnaissance=["collection_of_users_information", "gathering_of_iot_network_function"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["involved_parties_and_exposure"],
            discovery=["detection_through_trans_action_side_effect"],
            defense_evasion=["lack_of_data_subject_control", "improper_personal_data_management"],
            collection=["location_information"],
            impact=["invasion_of_online_privacy", "identity_theft", "social_engineering"])),
    ],
    "T5": [
        ("skilled_outsider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["searching_open_technical_database_for_digital_certificates"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["unnecessary_data_types", "involved_parties_and_exposure"],
            discovery=["linked_data"],
            defense_evasion=["regulatory_non_compliance", "insufficient_cybersecurity_risk_management"],
            collection=["financial_data", "location_information"],
            impact=["identity_theft"])),
        ("skilled_insider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["involved_parties_and_exposure"],
            discovery=["linked_data"],
            defense_evasion=["regulatory_non_compliance", "insufficient_cybersecurity_risk_management"],
            collection=["social_interaction_data", "location_information"],
            impact=["identity_theft"])),
        ("security_agent", _ROW(
            surface=["user_user_device"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["involved_parties_and_exposure", "unnecessary_data_types"],
            discovery=["identifiable_information"],
            defense_evasion=["regulatory_non_compliance", "insufficient_cybersecurity_risk_management"],
            collection=["social_interaction_data", "users_behavior_data", "device_identifiers"],
            impact=["unauthorized_access"])),
    ],
    "T6": [
        ("skilled_outsider", _ROW(
            surface=["smart_devices", "data_storage"],
            reconnaissance=["vulnerability_scanning_of_iot_network"],
            initial_access=["through_stolen_user_or_device_login_credentials", "access_through_the_gateway",
                            "access_through_the_cloud_provider", "access_through_the_third_party_provider"],
            credential_access=["involved_parties_and_exposure", "unnecessary_data_types"],
            discovery=["linked_data"],
            defense_evasion=["insufficient_cybersecurity_risk_management"],
            collection=["social_interaction_data", "financial_data", "users_behavior_data",
                        "communication_patterns", "device_identifiers"],
            impact=["invasion_of_online_privacy", "identity_theft", "social_engineering"])),
        ("skilled_insider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["involved_parties_and_exposure", "unnecessary_data_types"],
            discovery=["linked_data", "linkable_data"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "improper_personal_data_management"],
            collection=["financial_data"],
            impact=["identity_theft"])),
        ("third_party_provider", _ROW(
            surface=["user_user_device"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["access_through_the_third_party_provider"],
            credential_access=["unnecessary_processing", "involved_parties_and_exposure", "unnecessary_data_types"],
            discovery=["linked_data", "existence_of_an_item_of_interest_revealed_through_system_response"],
            defense_evasion=["lack_of_data_subject_control"],
            collection=["users_behavior_data"],
            impact=["invasion_of_personal_space", "invasion_of_online_privacy", "identity_theft"])),
    ],
    "T7": [
        ("skilled_outsider", _ROW(
            surface=["communication_link", "data_storage"],
            reconnaissance=["searching_open_technical_database_for_digital_certificates"],
            initial_access=["through_stolen_user_or_device_login_credentials", "access_through_the_iot_layer",
                            "access_through_the_gateway"],
            credential_access=["involved_parties_and_exposure", "unnecessary_data_types"],
            discovery=["linked_data", "linkable_data"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "improper_personal_data_management"],
            collection=["location_information", "health_and_biometric_data", "device_identifiers"],
            impact=["misuse_of_sensitive_information"])),
        ("cloud_provider", _ROW(
            surface=["data_storage"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials", "access_through_the_iot_layer",
                            "access_through_the_gateway", "access_through_the_cloud_provider",
                            "access_through_the_third_party_provider"],
            credential_access=["involved_parties_and_exposure", "unnecessary_data_types"],
            discovery=["linkable_data", "attributable_action_side_effect_evidence"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "regulatory_non_compliance",
                             "unawareness_of_processing_data"],
            collection=["location_information", "device_identifiers"],
            impact=["unauthorized_access", "unauthorized_surveillance"])),
        ("skilled_insider", _ROW(
            surface=["data_storage"],
            reconnaissance=["collection_of_users_information", "vulnerability_scanning_of_iot_network"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["excessive_volume"],
            discovery=["linked_data", "linkable_data"],
            defense_evasion=["improper_personal_data_management"],
            collection=["device_identifiers", "sensitive_iot_data"],
            impact=["misuse_of_sensitive_information"])),
    ],
    "T8": [
        ("third_party_provider", _ROW(
            surface=["data_storage"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["access_through_the_cloud_provider"],
            credential_access=["excessive_volume"],
            discovery=["linked_data"],
            defense_evasion=["improper_personal_data_management"],
            collection=["device_identifiers"],
            impact=["unwanted_tracking"])),
        ("service_provider", _ROW(
            surface=["data_storage"],
            reconnaissance=["collection_of_users_information", "gathering_of_iot_network_function"],
            initial_access=["access_through_the_gateway", "access_through_the_third_party_provider"],
            credential_access=["excessive_volume", "involved_parties_and_exposure"],
            discovery=["linked_data", "attributable_data_evidence",
                       "detection_through_trans_action_side_effect", "linkable_data"],
            defense_evasion=["unawareness_of_processing_data", "lack_of_data_subject_control",
                             "improper_personal_data_management", "insufficient_cybersecurity_risk_management"],
            collection=["location_information", "social_interaction_data", "device_identifiers"],
            impact=["invasion_of_online_privacy", "unwanted_tracking"])),
        ("cloud_provider", _ROW(
            surface=["data_storage"],
            reconnaissance=["collection_of_users_information", "gathering_of_iot_network_function"],
            initial_access=["access_through_the_third_party_provider"],
            credential_access=["unnecessary_processing", "involved_parties_and_exposure"],
            discovery=["linked_data", "detection_through_trans_action_side_effect"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "improper_personal_data_management"],
            collection=["location_information", "device_identifiers"],
            impact=["unauthorized_access", "unauthorized_surveillance"])),
    ],
    "T9": [
        ("skilled_outsider", _ROW(
            surface=["smart_devices", "user_user_device"],
            reconnaissance=["collection_of_users_information", "gathering_of_iot_network_function"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["excessive_volume"],
            discovery=["identifiable_information", "linked_data", "detection_through_trans_action_side_effect"],
            defense_evasion=["improper_personal_data_management"],
            collection=["sensitive_iot_data"],
            impact=["identity_theft"])),
        ("unskilled_insider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["involved_parties_and_exposure"],
            discovery=["linked_data"],
            defense_evasion=["insufficient_cybersecurity_risk_management"],
            collection=["location_information", "communication_patterns", "health_and_biometric_data",
                        "device_identifiers"],
            impact=["social_engineering"])),
        ("security_agent", _ROW(
            surface=["smart_devices"],
            reconnaissance=["collection_of_users_information"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["involved_parties_and_exposure"],
            discovery=["linked_data"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "improper_personal_data_management",
                             "lack_of_data_subject_control"],
            collection=["environment_data", "sensitive_iot_data", "audio_recording_and_video_capture",
                        "communication_patterns"],
            impact=["identity_theft", "social_engineering"])),
    ],
    "T10": [
        ("skilled_outsider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["gathering_of_iot_network_function"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["excessive_volume", "unnecessary_processing"],
            discovery=["linked_data"],
            defense_evasion=["improper_personal_data_management"],
            collection=["sensitive_iot_data", "device_identifiers"],
            impact=["misuse_of_sensitive_information", "misuse_of_sensitive_audio_video_data"])),
        ("skilled_insider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["gathering_of_iot_network_function"],
            initial_access=["through_stolen_user_or_device_login_credentials"],
            credential_access=["unnecessary_processing", "excessive_volume"],
            discovery=["linked_data"],
            defense_evasion=["regulatory_non_compliance", "improper_personal_data_management"],
            collection=["device_identifiers", "audio_recording_and_video_capture", "health_and_biometric_data"],
            impact=["misuse_of_sensitive_audio_video_data", "misuse_of_sensitive_information",
                    "unauthorized_access"])),
        ("government_authority", _ROW(
            surface=["data_storage", "user_user_device", "smart_devices", "communication_link"],
            reconnaissance=["searching_open_technical_database_for_digital_certificates",
                            "gathering_of_iot_network_function", "collection_of_users_information",
                            "vulnerability_scanning_of_iot_network"],
            initial_access=["access_through_the_cloud_provider", "access_through_the_gateway",
                            "access_through_the_iot_layer", "through_stolen_user_or_device_login_credentials"],
            credential_access=["unnecessary_processing"],
            discovery=["linked_data", "identifiable_information", "attributable_action_side_effect_evidence",
                       "detection_through_observed_communication", "detection_through_trans_action_side_effect"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "improper_personal_data_management",
                             "lack_of_data_subject_control"],
            collection=["device_identifiers", "users_behavior_data", "environment_data", "sensitive_iot_data",
                        "audio_recording_and_video_capture", "health_and_biometric_data", "location_information"],
            impact=["social_engineering", "misuse_of_sensitive_audio_video_data",
                    "misuse_of_sensitive_information", "identity_theft", "unauthorized_access"])),
    ],
    "T11": [
        ("skilled_outsider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["vulnerability_scanning_of_iot_network",
                            "searching_open_technical_database_for_digital_certificates"],
            initial_access=["through_stolen_user_or_device_login_credentials", "access_through_the_gateway"],
            credential_access=["excessive_volume", "involved_parties_and_exposure"],
            discovery=["linked_data", "linkable_data", "identifiable_information"],
            defense_evasion=["improper_personal_data_management"],
            collection=["sensitive_iot_data", "device_identifiers"],
            impact=["misuse_of_sensitive_information", "misuse_of_sensitive_audio_video_data",
                    "identity_theft", "unwanted_tracking"])),
        ("skilled_insider", _ROW(
            surface=["smart_devices", "user_user_device"],
            reconnaissance=["collection_of_users_information", "vulnerability_scanning_of_iot_network"],
            initial_access=["access_through_the_gateway"],
            credential_access=["excessive_volume"],
            discovery=["identifiable_information"],
            defense_evasion=["improper_personal_data_management"],
            collection=["device_identifiers", "sensitive_iot_data"],
            impact=["misuse_of_sensitive_information", "health_information_exposure"])),
        ("unskilled_insider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["vulnerability_scanning_of_iot_network"],
            initial_access=["access_through_the_gateway"],
            credential_access=["excessive_volume"],
            discovery=["linked_data", "linkable_data", "detection_through_observed_communication",
                       "existence_of_an_item_of_interest_revealed_through_system_response"],
            defense_evasion=["lack_of_data_subject_control"],
            collection=["audio_recording_and_video_capture"],
            impact=["misuse_of_sensitive_information"])),
    ],
    "T12": [
        ("skilled_outsider", _ROW(
            surface=["smart_devices", "user_user_device"],
            reconnaissance=["searching_open_technical_database_for_digital_certificates",
                            "gathering_of_iot_network_function", "vulnerability_scanning_of_iot_network"],
            initial_access=["through_stolen_user_or_device_login_credentials", "access_through_the_gateway"],
            credential_access=["excessive_volume", "unnecessary_processing"],
            discovery=["linked_data"],
            defense_evasion=["improper_personal_data_management"],
            collection=["device_identifiers", "sensitive_iot_data", "audio_recording_and_video_capture"],
            impact=["misuse_of_sensitive_information"])),
        ("skilled_insider", _ROW(
            surface=["smart_devices"],
            reconnaissance=["gathering_of_iot_network_function"],
            initial_access=["access_through_the_iot_layer", "through_stolen_user_or_device_login_credentials"],
            credential_access=["excessive_volume"],
            discovery=["linked_data"],
            defense_evasion=["insufficient_cybersecurity_risk_management"],
            collection=["audio_recording_and_video_capture"],
            impact=["unwanted_tracking", "misuse_of_sensitive_audio_video_data"])),
        ("government_authority", _ROW(
            surface=["user_user_device", "smart_devices"],
            reconnaissance=["collection_of_users_information", "vulnerability_scanning_of_iot_network"],
            initial_access=["access_through_the_gateway", "access_through_the_iot_layer"],
            credential_access=["excessive_volume"],
            discovery=["identifiable_information"],
            defense_evasion=["insufficient_cybersecurity_risk_management", "improper_personal_data_management"],
            collection=["location_information"],
            impact=["unauthorized_access", "unwanted_tracking"])),
    ],
}

_OTHER_THREATS = list(THREAT_ROWS.keys())  # T2..T12 in order


def _participants() -> list[dict]:
    out = []
    for i in range(PARTICIPANT_COUNT):
        out.append({
            "participant_id": f"p{i + 1:02d}",
            "country": _COUNTRIES[i],
            "education": _EDUCATION[i],
            "sector": _SECTORS[i],
            "years_experience": _YEARS[i],
            "security_skill_pct": 86.6,
            "privacy_skill_pct": 69.5,
        })
    return out


def _selected_threats(i: int) -> list[str]:
    others = [_OTHER_THREATS[(i + k) % len(_OTHER_THREATS)] for k in range(5)]
    return ["T1"] + others


def _mapping_from_cells(actor_id: str, cells: list[str]) -> dict:
    surfaces, collections, impacts = [], [], []
    techniques: dict[str, list[str]] = {}
    for cell in cells:
        group, local = cell.split("/", 1)
        if group == "surface":
            surfaces.append(local)
        elif group == "collection":
            collections.append(local)
        elif group == "impact":
            impacts.append(local)
        else:
            techniques.setdefault(group, []).append(local)
    return {
        "actor_id": actor_id,
        "surfaces": sorted(surfaces),
        "techniques": {k: sorted(v) for k, v in sorted(techniques.items())},
        "collections": sorted(collections),
        "impacts": sorted(impacts),
    }


def _row_cells(row: dict[str, list[str]]) -> list[str]:
    return [f"{group}/{local}" for group, locals_ in row.items() for local in locals_]


def _rank_counts(avail: int, row_sizes: list[int]) -> list[int]:
    """Counts per prominence rank so that both raw counts and whole-row
    critical sums strictly decrease, within the available participants."""
    c1, c2, c3 = row_sizes
    for base in (3, 2, 1):
        n3 = base
        n2 = max(n3 + 1, -(-(n3 * c3 + 1) // c2))
        n1 = max(n2 + 1, -(-(n2 * c2 + 1) // c1))
        if n1 <= avail:
            return [n1, n2, n3]
    raise ValueError(f"cannot realize rank ordering with {avail} participants")


def example_records() -> list[dict]:
    """The full synthetic corpus as JSON-ready record objects."""
    profiles = _participants()
    pids = [p["participant_id"] for p in profiles]

    # threat -> pid -> actor -> cells
    plan: dict[str, dict[str, dict[str, list[str]]]] = {}

    # T1: rotated prefix realization of the explicit cell plan.
    t1: dict[str, dict[str, list[str]]] = {pid: {} for pid in pids}
    for idx, (actor, (n_actor, cells)) in enumerate(T1_PLAN.items()):
        offset = (idx * 3) % PARTICIPANT_COUNT
        order = [pids[(offset + j) % PARTICIPANT_COUNT] for j in range(n_actor)]
        for pid in order:
            t1[pid][actor] = []
        for cell, count in cells.items():
            for pid in order[:count]:
                t1[pid][actor].append(cell)
    plan["T1"] = t1

    # T2-T12: whole-row assignment with rank-derived participant counts.
    selections = {pid: _selected_threats(i) for i, pid in enumerate(pids)}
    for threat_id, rows in THREAT_ROWS.items():
        chosen = [pid for pid in pids if threat_id in selections[pid]]
        counts = _rank_counts(len(chosen), [len(_row_cells(r)) for _, r in rows])
        per_pid: dict[str, dict[str, list[str]]] = {pid: {} for pid in chosen}
        for (actor, row), n_actor in zip(rows, counts):
            for pid in chosen[:n_actor]:
                per_pid[pid][actor] = _row_cells(row)
        plan[threat_id] = per_pid

    records = []
    for i, profile in enumerate(profiles):
        pid = profile["participant_id"]
        threats = []
        for threat_id in selections[pid]:
            actors = plan[threat_id].get(pid, {})
            threats.append({
                "threat_id": threat_id,
                "actors": [_mapping_from_cells(a, cells) for a, cells in actors.items()],
            })
        records.append({
            "participant": profile,
            "submitted_at": (_BASE_TIME + timedelta(minutes=7 * i)).isoformat().replace("+00:00", "Z"),
            "qualifying_summary": _SUMMARIES[i % len(_SUMMARIES)],
            "threats": threats,
        })
    return records


def example_ndjson() -> str:
    return "\n".join(json.dumps(r, ensure_ascii=False) for r in example_records()) + "\n"
