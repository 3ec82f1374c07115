#pragma once

// Withdrawal dynamics: the kappa witness sets behind a trust relation, the
// sovereign removal of a single proposition from a single profile, and the
// machine-checked demonstration that withdrawing a relation's witnesses from
// the trustee always breaks it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trustmesh/core_model.hpp"

namespace trustmesh::fragility {

enum class RelationKind { ForeignTrust, DirectMutual, EquivV2 };

const char* to_string(RelationKind kind);

/// Which trust relation instance is under scrutiny. ForeignTrust needs a
/// scope; EquivV2 needs a scope and the two credentials.
struct RelationSpec {
    RelationKind kind = RelationKind::ForeignTrust;
    std::optional<ScopeId> scope;
    std::optional<CredentialId> c1;
    std::optional<CredentialId> c2;

    static RelationSpec foreign_trust(ScopeId scope) {
        return {RelationKind::ForeignTrust, std::move(scope), std::nullopt, std::nullopt};
    }
    static RelationSpec direct_mutual() {
        return {RelationKind::DirectMutual, std::nullopt, std::nullopt, std::nullopt};
    }
    static RelationSpec equiv_v2(ScopeId scope, CredentialId c1, CredentialId c2) {
        return {RelationKind::EquivV2, std::move(scope), std::move(c1), std::move(c2)};
    }

    std::string describe() const;
};

/// True iff the relation currently holds between the named ecosystems.
bool evaluate_relation(const Universe& universe, const std::string& trustor,
                       const std::string& trustee, const RelationSpec& relation);

/// The full witness set whose removal from the trustee falsifies the
/// relation. Never empty while the relation holds, and always contained in
/// the intersection of the two proposition sets.
struct KappaSet {
    std::string trustor;
    std::string trustee;
    RelationSpec relation;
    std::set<TrustProposition> witnesses;
};

/// Throws RelationDoesNotHold when there is nothing to witness.
KappaSet kappa(const Universe& universe, const std::string& trustor, const std::string& trustee,
               const RelationSpec& relation);

struct WithdrawalEvent {
    std::string eco_id;
    TrustProposition proposition;
    std::uint64_t sequence = 0;
    std::string timestamp;
};

/// Sovereign withdrawal: returns a universe identical except that the named
/// profile no longer asserts the proposition. No other profile is touched.
Universe withdraw(const Universe& universe, const std::string& eco_id,
                  const TrustProposition& proposition);

Universe withdraw(const Universe& universe, const WithdrawalEvent& event);

struct FragilityStep {
    std::string action;  // "evaluate" | "withdraw"
    std::optional<TrustProposition> proposition;
    bool relation_holds = false;
};

/// Replay of the fragility argument: evaluate, withdraw each kappa witness
/// from the trustee, re-evaluate after every step. Ends with the relation
/// false.
struct FragilityTrace {
    KappaSet kappa;
    std::vector<FragilityStep> steps;
    bool relation_holds_after = true;
    Universe final_universe;

    /// Line-oriented JSON log, one record per step.
    std::string to_jsonl() const;
};

FragilityTrace fragility_check(const Universe& universe, const std::string& trustor,
                               const std::string& trustee, const RelationSpec& relation);

struct BrokenForeignTrustEdge {
    std::string trustor;
    std::string trustee;
    ScopeId scope;

    auto operator<=>(const BrokenForeignTrustEdge&) const = default;
};

struct BrokenMutualTrustEdge {
    std::string first;
    std::string second;  // first < second

    auto operator<=>(const BrokenMutualTrustEdge&) const = default;
};

struct RemovedEquivalencePair {
    ScopeId scope;
    CredentialId c1;
    CredentialId c2;  // c1 <= c2

    auto operator<=>(const RemovedEquivalencePair&) const = default;
};

struct MonopolyCollapse {
    ScopeId scope;
    CredentialId credential;
    ProviderId provider;

    auto operator<=>(const MonopolyCollapse&) const = default;
};

/// Everything that would change if the withdrawal were applied: broken trust
/// edges across all profile pairs and scopes, common-pool shrinkage, version-2
/// equivalence pairs that disappear, and credentials whose equivalence
/// collapses entirely because a monopoly provider backed them.
struct ImpactReport {
    std::string eco_id;
    TrustProposition proposition;
    std::vector<BrokenForeignTrustEdge> broken_foreign_trust;
    std::vector<BrokenMutualTrustEdge> broken_direct_mutual;
    std::vector<TrustProposition> removed_from_common_pool;
    std::vector<RemovedEquivalencePair> removed_equivalence_pairs;
    std::vector<MonopolyCollapse> monopoly_collapses;

    bool empty() const {
        return broken_foreign_trust.empty() && broken_direct_mutual.empty() &&
               removed_from_common_pool.empty() && removed_equivalence_pairs.empty() &&
               monopoly_collapses.empty();
    }
};

ImpactReport withdrawal_impact(const Universe& universe, const std::string& eco_id,
                               const TrustProposition& proposition);

}  // namespace trustmesh::fragility
