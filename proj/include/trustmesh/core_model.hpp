#pragma once

// Foundational vocabulary: identifier types, trust propositions, ecosystem
// trust profiles, and the universe of all published profiles. Everything here
// is an immutable value; state transitions live in the registry store.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trustmesh/errors.hpp"

namespace trustmesh {

struct ScopeId {
    std::string value;

    auto operator<=>(const ScopeId&) const = default;
};

/// A trust service provider. Identity is the id string alone; the optional
/// endpoint is registry metadata and never participates in comparisons
/// (normalizing or merging on endpoints would silently merge distinct
/// registry entries).
struct ProviderId {
    std::string value;
    std::optional<std::string> endpoint;

    friend bool operator==(const ProviderId& a, const ProviderId& b) { return a.value == b.value; }
    friend std::strong_ordering operator<=>(const ProviderId& a, const ProviderId& b) {
        return a.value <=> b.value;
    }
};

struct CredentialId {
    std::string value;

    auto operator<=>(const CredentialId&) const = default;
};

/// "Provider p issues credential c for scope s", canonically ordered
/// (scope, provider, credential).
struct TrustProposition {
    ScopeId scope;
    ProviderId provider;
    CredentialId credential;

    auto operator<=>(const TrustProposition&) const = default;
};

/// An ecosystem's published trust profile: its domestic providers P plus the
/// trust propositions T it accepts. A provider referenced in T but absent
/// from P is a trusted foreign issuer.
struct EcosystemTrustProfile {
    std::string eco_id;
    std::set<ProviderId> domestic_providers;
    std::set<TrustProposition> propositions;

    friend bool operator==(const EcosystemTrustProfile& a, const EcosystemTrustProfile& b) {
        return a.eco_id == b.eco_id && a.domestic_providers == b.domestic_providers &&
               a.propositions == b.propositions;
    }
};

/// All profiles known to the registry, keyed by ecosystem id. The global
/// provider/scope/credential sets are derived unions over all profiles.
struct Universe {
    std::map<std::string, EcosystemTrustProfile> profiles;

    bool contains(const std::string& eco_id) const { return profiles.count(eco_id) > 0; }

    const EcosystemTrustProfile& at(const std::string& eco_id) const {
        auto it = profiles.find(eco_id);
        if (it == profiles.end()) {
            throw Error(ErrorCode::UnknownEcosystem, "unknown ecosystem: " + eco_id,
                        {{"ecoID", eco_id}});
        }
        return it->second;
    }

    std::set<ScopeId> all_scopes() const;
    std::set<ProviderId> all_providers() const;
    std::set<CredentialId> all_credentials() const;

    friend bool operator==(const Universe& a, const Universe& b) { return a.profiles == b.profiles; }
};

/// Scopes accepted by E: the first components of its propositions.
std::set<ScopeId> scopes_of(const EcosystemTrustProfile& profile);

/// Credentials accepted by E: the third components of its propositions.
std::set<CredentialId> credentials_of(const EcosystemTrustProfile& profile);

/// A provider is foreign to E exactly when it is not in E's domestic set.
bool is_foreign(const EcosystemTrustProfile& profile, const ProviderId& provider);

struct ValidationIssue {
    std::string field;
    std::string message;

    auto operator<=>(const ValidationIssue&) const = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;

    bool ok() const { return errors.empty(); }
};

/// Structural validation: empty identifiers and malformed endpoints are
/// errors; a domestic provider never referenced by any proposition is only a
/// warning (nothing forbids declaring an unused provider). Never throws.
ValidationReport validate_profile(const EcosystemTrustProfile& profile);

/// Minimal syntactic URI check (scheme ':' rest, no whitespace or control
/// characters). Endpoint semantics are deliberately unconstrained.
bool looks_like_uri(const std::string& text);

}  // namespace trustmesh
