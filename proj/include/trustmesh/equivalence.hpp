#pragma once

// Credential equivalence, two ways. Version 1 treats every credential under a
// shared scope as equivalent and is only sound when the per-scope credential
// sets partition the universe's credentials; it is trivially gamed by an
// imposter ecosystem declaring a fresh credential into the scope. Version 2
// narrows the witnesses to the common pool of propositions accepted by every
// ecosystem, which defeats the imposter.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trustmesh/core_model.hpp"

namespace trustmesh::equivalence {

/// Per-scope credential sets C(s) plus their union over all scopes.
struct ScopeCredentialIndex {
    std::map<ScopeId, std::set<CredentialId>> by_scope;
    std::set<CredentialId> universe_credentials;
};

/// Credentials issued and accepted under a scope, across the whole universe.
std::set<CredentialId> credentials_for_scope(const Universe& universe, const ScopeId& scope);

ScopeCredentialIndex build_scope_credential_index(const Universe& universe);

struct PartitionReport {
    bool is_partition = true;
    std::set<CredentialId> violations;  // credentials appearing under >= 2 scopes
};

/// The C(s) cover the union by construction; they form a partition exactly
/// when they are pairwise disjoint.
PartitionReport check_partition(const ScopeCredentialIndex& index);

/// Version-1 equivalence: some scope accepts both credentials. Refuses to
/// answer (PartitionViolated, listing the violators) when the per-scope sets
/// do not partition the credentials, since transitivity is unsound then.
bool equiv_v1(const Universe& universe, const CredentialId& c1, const CredentialId& c2);

/// The common pool: propositions accepted by every ecosystem in the universe.
/// Undefined (EmptyUniverse) over an empty intersection family.
std::set<TrustProposition> common_pool(const Universe& universe);

/// Version-2 equivalence for a scope: both credentials carry a common-pool
/// proposition under that scope. No partition assumption; scope-indexed.
bool equiv_v2(const Universe& universe, const ScopeId& scope, const CredentialId& c1,
              const CredentialId& c2);

struct MonopolyReport {
    std::set<ProviderId> providers;  // every provider asserting (s, p, c) somewhere
    bool monopoly = false;           // exactly one such provider
};

MonopolyReport monopoly_providers(const Universe& universe, const ScopeId& scope,
                                  const CredentialId& credential);

/// Machine-checked replay of the imposter attack: a fresh ecosystem declares
/// one proposition with a fresh provider and credential into the scope, which
/// makes the fresh credential v1-equivalent to everything there while staying
/// v2-equivalent to nothing.
struct ImposterAttackTrace {
    ScopeId scope;
    EcosystemTrustProfile imposter;
    TrustProposition planted;
    std::set<CredentialId> targets;  // C(s) before the attack
    Universe post_universe;
    bool v1_all_equivalent = false;   // equiv_v1(planted, c) for every target
    bool v2_none_equivalent = false;  // equiv_v2 rejects every pairing
    std::size_t class_size_before = 0;
    std::size_t class_size_after = 0;
    std::size_t class_count_for_scope_before = 0;
    std::size_t class_count_for_scope_after = 0;
};

ImposterAttackTrace demonstrate_imposter_attack(const Universe& universe, const ScopeId& scope);

enum class EquivalenceMode { V1, V2 };

const char* to_string(EquivalenceMode mode);

/// A catalog row: who accepts which credential from which provider, per scope.
struct CatalogRow {
    ScopeId scope;
    std::string eco_id;
    ProviderId provider;
    CredentialId credential;

    auto operator<=>(const CatalogRow&) const = default;
};

struct ScopeClasses {
    ScopeId scope;
    std::vector<std::vector<CredentialId>> classes;  // disjoint, lexicographically ordered
};

struct EquivalenceReport {
    EquivalenceMode mode = EquivalenceMode::V1;
    std::vector<ScopeClasses> scopes;
    std::optional<bool> partition_ok;            // V1 only
    std::optional<std::size_t> common_pool_size;  // V2 only
    std::vector<CatalogRow> catalog;
};

/// Equivalence classes per scope under the selected construction, with the
/// catalog rows backing them. V1 throws PartitionViolated on non-partitioned
/// universes; V2 throws EmptyUniverse on an empty one. Restricting to a scope
/// reports that scope only.
EquivalenceReport equivalence_report(const Universe& universe, EquivalenceMode mode,
                                     const std::optional<ScopeId>& scope = std::nullopt);

}  // namespace trustmesh::equivalence
