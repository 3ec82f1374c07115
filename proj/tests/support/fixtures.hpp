#pragma once

// Shared hand-built fixtures.

#include <string>

#include "trustmesh/core_model.hpp"
#include "trustmesh/dataspace.hpp"

namespace trustmesh::testing {

// Two ecosystems mutually recognizing each other's identity credential: the
// Canadian company-number credential and the Catena-X credential, each issued
// by the respective domestic provider.
inline const ScopeId kIdentityScope{"imxc:Identity"};
inline const ProviderId kCaProvider{"tsp.ca", std::nullopt};
inline const ProviderId kFxProvider{"tsp.fx", std::nullopt};
inline const CredentialId kCaCredential{"cred.ca-company-number"};
inline const CredentialId kFxCredential{"cred.catena-x"};
inline const TrustProposition kCaProposition{kIdentityScope, kCaProvider, kCaCredential};
inline const TrustProposition kFxProposition{kIdentityScope, kFxProvider, kFxCredential};

inline EcosystemTrustProfile canada_profile() {
    return {"eco.ca", {kCaProvider}, {kCaProposition, kFxProposition}};
}

inline EcosystemTrustProfile factory_x_profile() {
    return {"eco.fx", {kFxProvider}, {kCaProposition, kFxProposition}};
}

inline Universe canada_factory_x_universe() {
    Universe universe;
    universe.profiles.emplace("eco.ca", canada_profile());
    universe.profiles.emplace("eco.fx", factory_x_profile());
    return universe;
}

// A two-rule trust framework: one identity proposition attesting the identity
// rule, one membership proposition attesting the membership rule, both issued
// by the same provider.
inline const ScopeId kFrameworkIdentityScope{"imxc:Identity"};
inline const ScopeId kFrameworkMembershipScope{"imxc:Membership"};
inline const ProviderId kFrameworkProvider{"tsp.t0", std::nullopt};
inline const TrustProposition kIdentityProposition{kFrameworkIdentityScope, kFrameworkProvider,
                                                   CredentialId{"cred.identity"}};
inline const TrustProposition kMembershipProposition{kFrameworkMembershipScope, kFrameworkProvider,
                                                     CredentialId{"cred.membership"}};
inline const dataspace::RuleId kIdentityRule{"rule.identity"};
inline const dataspace::RuleId kMembershipRule{"rule.membership"};

inline dataspace::TrustFramework two_rule_framework() {
    dataspace::TrustFramework framework;
    framework.propositions = {kIdentityProposition, kMembershipProposition};
    framework.rules = {kIdentityRule, kMembershipRule};
    framework.assertions = {{kIdentityProposition, kIdentityRule},
                            {kMembershipProposition, kMembershipRule}};
    return framework;
}

/// The framework wrapped as a data space: the identity rule binds the data
/// provider, the membership rule binds the consumer.
inline dataspace::DataSpace two_rule_data_space() {
    dataspace::DataSpace space;
    space.participants = {{"org.a"}, {"org.b"}};
    space.framework = two_rule_framework();
    space.sharing.provider_facing = {kIdentityRule};
    space.sharing.consumer_facing = {kMembershipRule};
    return space;
}

inline const std::string kCanadaDocument = R"({
  "ecoID": "eco.ca",
  "domesticTSPs": [{"ecoTSP": "tsp.ca", "ecoTSPEndpoint": "https://registry.eco-ca.example/tsp"}],
  "trustPropositions": [
    {"ecoTrustScope": "imxc:Identity", "ecoTSP": "tsp.ca", "ecoCredentialType": "cred.ca-company-number"},
    {"ecoTrustScope": "imxc:Identity", "ecoTSP": "tsp.fx", "ecoCredentialType": "cred.catena-x"}
  ]
})";

inline const std::string kFactoryXDocument = R"({
  "ecoID": "eco.fx",
  "domesticTSPs": [{"ecoTSP": "tsp.fx"}],
  "trustPropositions": [
    {"ecoTrustScope": "imxc:Identity", "ecoTSP": "tsp.fx", "ecoCredentialType": "cred.catena-x"},
    {"ecoTrustScope": "imxc:Identity", "ecoTSP": "tsp.ca", "ecoCredentialType": "cred.ca-company-number"}
  ]
})";

}  // namespace trustmesh::testing
