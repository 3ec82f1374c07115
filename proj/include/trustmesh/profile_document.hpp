#pragma once

// The published form of an ecosystem trust profile: a JSON document carrying
// the ontology field names (ecoID, ecoTrustScope, ecoTSP, ecoCredentialType,
// ecoTSPEndpoint), optionally extended with the data-space sections (rules,
// assertions, participants, sharingRules). Parsing is strict: unknown fields
// are rejected and the result always satisfies the profile invariants.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trustmesh/core_model.hpp"
#include "trustmesh/dataspace.hpp"

namespace trustmesh::doc {

struct DomesticTspEntry {
    std::string tsp;
    std::optional<std::string> endpoint;

    auto operator<=>(const DomesticTspEntry&) const = default;
};

struct PropositionEntry {
    TrustProposition proposition;
    bool independently_verifiable = false;
    std::vector<std::string> facets;  // free-form interoperability tags

    auto operator<=>(const PropositionEntry&) const = default;
};

struct AssertionEntry {
    TrustProposition proposition;
    std::string rule;

    auto operator<=>(const AssertionEntry&) const = default;
};

struct SharingRulesSection {
    std::vector<std::string> provider_facing;
    std::vector<std::string> consumer_facing;
};

struct DataspaceSection {
    std::vector<std::string> rules;
    std::vector<AssertionEntry> assertions;
    std::vector<std::string> participants;
    SharingRulesSection sharing_rules;
};

struct ProfileDocument {
    std::string eco_id;
    std::vector<DomesticTspEntry> domestic_tsps;
    std::vector<PropositionEntry> trust_propositions;
    std::optional<DataspaceSection> dataspace;
};

/// Strict parse from UTF-8 JSON bytes. Malformed JSON raises SyntaxError with
/// the position; schema violations (unknown fields, missing or malformed
/// fields, duplicate triples, dangling references, profile invariant
/// failures) raise SchemaError naming the field.
ProfileDocument parse_profile_document(std::string_view bytes);

/// Same checks, starting from an already-parsed JSON value.
ProfileDocument document_from_json(const nlohmann::json& j);

/// Canonical JSON: object keys sorted, arrays sorted by their natural keys
/// (propositions by scope/provider/credential). Serialization of the same
/// logical document is byte-identical.
nlohmann::json to_canonical_json(const ProfileDocument& document);

std::string serialize(const ProfileDocument& document, int indent = 2);

EcosystemTrustProfile to_profile(const ProfileDocument& document);

/// The data-space view of an extended document. Empty when the document has
/// no extension.
std::optional<dataspace::DataSpace> to_data_space(const ProfileDocument& document);

/// Validation without throwing: structural schema issues become errors,
/// unused domestic providers and unattested framework rules become warnings.
ValidationReport validate_document(const nlohmann::json& j);

}  // namespace trustmesh::doc
