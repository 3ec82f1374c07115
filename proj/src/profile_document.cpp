#include "trustmesh/profile_document.hpp"

#include <algorithm>
#include <set>

#include "trustmesh/json_codec.hpp"

namespace trustmesh::doc {
namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& reason) {
    throw Error(ErrorCode::SchemaError, field + ": " + reason, {{"field", field}});
}

void require_known_fields(const nlohmann::json& j, const std::string& where,
                          std::initializer_list<const char*> known) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) schema_error(where.empty() ? key : where + "." + key, "unknown field");
    }
}

std::string require_string(const nlohmann::json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_string()) {
        schema_error(field, "must be a string");
    }
    return j[field].get<std::string>();
}

const nlohmann::json& require_array(const nlohmann::json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array()) {
        schema_error(field, "must be an array");
    }
    return j[field];
}

std::vector<std::string> string_list(const nlohmann::json& arr, const std::string& field) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::size_t i = 0;
    for (const auto& item : arr) {
        const std::string where = field + "[" + std::to_string(i++) + "]";
        if (!item.is_string() || item.get<std::string>().empty()) {
            schema_error(where, "must be a non-empty string");
        }
        if (!seen.insert(item.get<std::string>()).second) {
            schema_error(where, "duplicate entry '" + item.get<std::string>() + "'");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

PropositionEntry proposition_entry_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) schema_error(where, "must be an object");
    require_known_fields(j, where, {"ecoTrustScope", "ecoTSP", "ecoCredentialType",
                                    "independentlyVerifiable", "facets"});
    PropositionEntry entry;
    nlohmann::json triple = nlohmann::json::object();
    for (const char* key : {"ecoTrustScope", "ecoTSP", "ecoCredentialType"}) {
        if (j.contains(key)) triple[key] = j[key];
    }
    entry.proposition = codec::proposition_from_json(triple, where);
    if (j.contains("independentlyVerifiable")) {
        if (!j["independentlyVerifiable"].is_boolean()) {
            schema_error(where + ".independentlyVerifiable", "must be a boolean");
        }
        entry.independently_verifiable = j["independentlyVerifiable"].get<bool>();
    }
    if (j.contains("facets")) {
        if (!j["facets"].is_array()) schema_error(where + ".facets", "must be an array");
        entry.facets = string_list(j["facets"], where + ".facets");
    }
    return entry;
}

DataspaceSection dataspace_section_from_json(const nlohmann::json& j,
                                             const std::vector<PropositionEntry>& propositions) {
    DataspaceSection section;
    if (j.contains("rules")) {
        section.rules = string_list(require_array(j, "rules"), "rules");
    }
    if (j.contains("participants")) {
        section.participants = string_list(require_array(j, "participants"), "participants");
    }
    if (j.contains("sharingRules")) {
        const auto& sr = j["sharingRules"];
        if (!sr.is_object()) schema_error("sharingRules", "must be an object");
        require_known_fields(sr, "sharingRules", {"providerFacing", "consumerFacing"});
        if (sr.contains("providerFacing")) {
            section.sharing_rules.provider_facing =
                string_list(require_array(sr, "providerFacing"), "sharingRules.providerFacing");
        }
        if (sr.contains("consumerFacing")) {
            section.sharing_rules.consumer_facing =
                string_list(require_array(sr, "consumerFacing"), "sharingRules.consumerFacing");
        }
    }

    std::set<std::string> rule_ids(section.rules.begin(), section.rules.end());
    std::set<TrustProposition> triples;
    for (const auto& entry : propositions) triples.insert(entry.proposition);

    if (j.contains("assertions")) {
        const auto& arr = require_array(j, "assertions");
        std::size_t i = 0;
        std::set<std::pair<TrustProposition, std::string>> seen;
        for (const auto& item : arr) {
            const std::string where = "assertions[" + std::to_string(i++) + "]";
            if (!item.is_object()) schema_error(where, "must be an object");
            require_known_fields(item, where, {"proposition", "rule"});
            if (!item.contains("proposition")) schema_error(where + ".proposition", "is required");
            AssertionEntry assertion;
            assertion.proposition =
                codec::proposition_from_json(item["proposition"], where + ".proposition");
            assertion.rule = require_string(item, "rule");
            if (assertion.rule.empty()) schema_error(where + ".rule", "must be non-empty");
            if (!rule_ids.count(assertion.rule)) {
                schema_error(where + ".rule", "references unknown rule '" + assertion.rule + "'");
            }
            if (!triples.count(assertion.proposition)) {
                schema_error(where + ".proposition",
                             "references a proposition not in trustPropositions");
            }
            if (!seen.insert({assertion.proposition, assertion.rule}).second) {
                schema_error(where, "duplicate assertion");
            }
            section.assertions.push_back(std::move(assertion));
        }
    }
    for (const auto& rule : section.sharing_rules.provider_facing) {
        if (!rule_ids.count(rule)) {
            schema_error("sharingRules.providerFacing", "references unknown rule '" + rule + "'");
        }
    }
    for (const auto& rule : section.sharing_rules.consumer_facing) {
        if (!rule_ids.count(rule)) {
            schema_error("sharingRules.consumerFacing", "references unknown rule '" + rule + "'");
        }
    }
    return section;
}

}  // namespace

ProfileDocument document_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::SchemaError, "profile document must be a JSON object");
    }
    require_known_fields(j, "", {"ecoID", "domesticTSPs", "trustPropositions", "rules",
                                 "assertions", "participants", "sharingRules"});

    ProfileDocument document;
    document.eco_id = require_string(j, "ecoID");
    if (document.eco_id.empty()) schema_error("ecoID", "must be non-empty");

    const auto& tsps = require_array(j, "domesticTSPs");
    std::size_t i = 0;
    std::set<std::string> tsp_ids;
    for (const auto& item : tsps) {
        const std::string where = "domesticTSPs[" + std::to_string(i++) + "]";
        if (!item.is_object()) schema_error(where, "must be an object");
        require_known_fields(item, where, {"ecoTSP", "ecoTSPEndpoint"});
        DomesticTspEntry entry;
        entry.tsp = require_string(item, "ecoTSP");
        if (entry.tsp.empty()) schema_error(where + ".ecoTSP", "must be non-empty");
        if (!tsp_ids.insert(entry.tsp).second) {
            schema_error(where + ".ecoTSP", "duplicate provider '" + entry.tsp + "'");
        }
        if (item.contains("ecoTSPEndpoint")) {
            if (!item["ecoTSPEndpoint"].is_string()) {
                schema_error(where + ".ecoTSPEndpoint", "must be a string");
            }
            entry.endpoint = item["ecoTSPEndpoint"].get<std::string>();
        }
        document.domestic_tsps.push_back(std::move(entry));
    }

    const auto& propositions = require_array(j, "trustPropositions");
    i = 0;
    std::set<TrustProposition> triples;
    for (const auto& item : propositions) {
        const std::string where = "trustPropositions[" + std::to_string(i++) + "]";
        auto entry = proposition_entry_from_json(item, where);
        if (!triples.insert(entry.proposition).second) {
            schema_error(where, "duplicate trust proposition");
        }
        document.trust_propositions.push_back(std::move(entry));
    }

    const bool extended = j.contains("rules") || j.contains("assertions") ||
                          j.contains("participants") || j.contains("sharingRules");
    if (extended) {
        document.dataspace = dataspace_section_from_json(j, document.trust_propositions);
    }

    const auto report = validate_profile(to_profile(document));
    if (!report.ok()) {
        throw Error(ErrorCode::SchemaError,
                    report.errors.front().field + ": " + report.errors.front().message,
                    codec::to_json(report));
    }
    return document;
}

ProfileDocument parse_profile_document(std::string_view bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, e.what(), {{"position", e.byte}});
    }
    return document_from_json(j);
}

nlohmann::json to_canonical_json(const ProfileDocument& document) {
    nlohmann::json out;
    out["ecoID"] = document.eco_id;

    auto tsps = document.domestic_tsps;
    std::sort(tsps.begin(), tsps.end());
    out["domesticTSPs"] = nlohmann::json::array();
    for (const auto& entry : tsps) {
        nlohmann::json item{{"ecoTSP", entry.tsp}};
        if (entry.endpoint) item["ecoTSPEndpoint"] = *entry.endpoint;
        out["domesticTSPs"].push_back(std::move(item));
    }

    auto propositions = document.trust_propositions;
    std::sort(propositions.begin(), propositions.end());
    out["trustPropositions"] = nlohmann::json::array();
    for (const auto& entry : propositions) {
        nlohmann::json item = codec::to_json(entry.proposition);
        if (entry.independently_verifiable) item["independentlyVerifiable"] = true;
        if (!entry.facets.empty()) {
            auto facets = entry.facets;
            std::sort(facets.begin(), facets.end());
            item["facets"] = facets;
        }
        out["trustPropositions"].push_back(std::move(item));
    }

    if (document.dataspace) {
        const auto& section = *document.dataspace;
        auto rules = section.rules;
        std::sort(rules.begin(), rules.end());
        out["rules"] = rules;

        auto assertions = section.assertions;
        std::sort(assertions.begin(), assertions.end());
        out["assertions"] = nlohmann::json::array();
        for (const auto& a : assertions) {
            out["assertions"].push_back(
                {{"proposition", codec::to_json(a.proposition)}, {"rule", a.rule}});
        }

        auto participants = section.participants;
        std::sort(participants.begin(), participants.end());
        out["participants"] = participants;

        auto provider_facing = section.sharing_rules.provider_facing;
        auto consumer_facing = section.sharing_rules.consumer_facing;
        std::sort(provider_facing.begin(), provider_facing.end());
        std::sort(consumer_facing.begin(), consumer_facing.end());
        out["sharingRules"] = {{"providerFacing", provider_facing},
                               {"consumerFacing", consumer_facing}};
    }
    return out;
}

std::string serialize(const ProfileDocument& document, int indent) {
    return to_canonical_json(document).dump(indent);
}

EcosystemTrustProfile to_profile(const ProfileDocument& document) {
    EcosystemTrustProfile profile;
    profile.eco_id = document.eco_id;
    for (const auto& entry : document.domestic_tsps) {
        profile.domestic_providers.insert(ProviderId{entry.tsp, entry.endpoint});
    }
    for (const auto& entry : document.trust_propositions) {
        profile.propositions.insert(entry.proposition);
    }
    return profile;
}

std::optional<dataspace::DataSpace> to_data_space(const ProfileDocument& document) {
    if (!document.dataspace) return std::nullopt;
    const auto& section = *document.dataspace;
    dataspace::DataSpace space;
    for (const auto& entry : document.trust_propositions) {
        space.framework.propositions.insert(entry.proposition);
        if (entry.independently_verifiable) {
            space.independently_verifiable.insert(entry.proposition);
        }
    }
    for (const auto& rule : section.rules) space.framework.rules.insert({rule});
    for (const auto& a : section.assertions) {
        space.framework.assertions.insert({a.proposition, {a.rule}});
    }
    for (const auto& p : section.participants) space.participants.insert({p});
    for (const auto& rule : section.sharing_rules.provider_facing) {
        space.sharing.provider_facing.insert({rule});
    }
    for (const auto& rule : section.sharing_rules.consumer_facing) {
        space.sharing.consumer_facing.insert({rule});
    }
    return space;
}

ValidationReport validate_document(const nlohmann::json& j) {
    ValidationReport report;
    ProfileDocument document;
    try {
        document = document_from_json(j);
    } catch (const Error& e) {
        std::string field = "document";
        if (e.details().contains("field")) field = e.details()["field"].get<std::string>();
        report.errors.push_back({field, e.what()});
        return report;
    }
    report = validate_profile(to_profile(document));
    if (auto space = to_data_space(document)) {
        const auto consistency = dataspace::check_framework_consistency(space->framework);
        for (const auto& rule : consistency.unattested_rules) {
            report.warnings.push_back({"rules", "rule '" + rule.value + "' has no attestation"});
        }
    }
    return report;
}

}  // namespace trustmesh::doc
