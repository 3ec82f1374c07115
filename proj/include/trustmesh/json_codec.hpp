#pragma once

// Wire-level JSON mapping for domain values. Response envelopes use
// snake_case keys; ontology field names (ecoID, ecoTrustScope, ecoTSP,
// ecoCredentialType) are kept verbatim inside proposition and document
// objects.

#include <string>

#include "json.hpp"
#include "trustmesh/core_model.hpp"
#include "trustmesh/dataspace.hpp"
#include "trustmesh/equivalence.hpp"
#include "trustmesh/fragility.hpp"
#include "trustmesh/relations.hpp"

namespace trustmesh::codec {

nlohmann::json to_json(const TrustProposition& t);

/// Strict decode of a proposition object; `where` names the field in errors.
TrustProposition proposition_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const relations::TrustWitness& witness);
nlohmann::json to_json(const relations::ForeignTrustResult& result);
nlohmann::json to_json(const relations::SharedPropositionCase& shared);
nlohmann::json to_json(const equivalence::EquivalenceReport& report);
nlohmann::json to_json(const equivalence::ImposterAttackTrace& trace);
nlohmann::json to_json(const fragility::KappaSet& kappa);
nlohmann::json to_json(const fragility::ImpactReport& report);
nlohmann::json to_json(const dataspace::OneWayReport& report);
nlohmann::json to_json(const dataspace::InteropReport& report);
nlohmann::json to_json(const dataspace::ConsistencyReport& report);

}  // namespace trustmesh::codec
