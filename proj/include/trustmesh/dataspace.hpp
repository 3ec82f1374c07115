#pragma once

// Trust frameworks and data spaces: rule attestation, the sharing-related
// proposition sets, the possibility predicate for data sharing, one-way
// cross-space sharing, and the interoperability decision (equality of the
// sharing-related proposition sets).

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trustmesh/core_model.hpp"

namespace trustmesh::dataspace {

struct RuleId {
    std::string value;

    auto operator<=>(const RuleId&) const = default;
};

struct ParticipantId {
    std::string value;

    auto operator<=>(const ParticipantId&) const = default;
};

/// (t, r): proposition t attests rule r.
struct Assertion {
    TrustProposition proposition;
    RuleId rule;

    auto operator<=>(const Assertion&) const = default;
};

struct TrustFramework {
    std::set<TrustProposition> propositions;  // T
    std::set<RuleId> rules;                   // R
    std::set<Assertion> assertions;           // A
};

/// Which sharing-related rules bind which role. A provider-facing rule must
/// be fulfilled by the data provider, a consumer-facing one by the consumer.
/// The two sets may overlap.
struct SharingRules {
    std::set<RuleId> provider_facing;  // R_pp
    std::set<RuleId> consumer_facing;  // R_cc
};

struct DataSpace {
    std::set<ParticipantId> participants;  // O
    TrustFramework framework;
    SharingRules sharing;
    // Propositions flagged as carrying independently verifiable proof; report
    // annotation only, no proof system behind it.
    std::set<TrustProposition> independently_verifiable;
};

struct ConsistencyReport {
    bool consistent = true;
    std::vector<RuleId> unattested_rules;  // rules with no valid attestation
};

/// A framework is consistent when every rule is attested by at least one
/// assertion whose proposition is actually in T. An assertion pointing at a
/// withdrawn proposition does not count.
ConsistencyReport check_framework_consistency(const TrustFramework& framework);

struct SharingPropositions {
    std::set<TrustProposition> provider_facing;  // T_pp
    std::set<TrustProposition> consumer_facing;  // T_cc
    std::set<TrustProposition> all;              // T_pp ∪ T_cc
};

/// Propositions attesting the sharing-related rules. Throws
/// InconsistentFramework when the framework has unattested rules.
SharingPropositions sharing_propositions(const DataSpace& space);

struct SharingDirection {
    ParticipantId provider;
    ParticipantId consumer;
};

/// A sharing rule that cannot be satisfied: either no assertion attests it,
/// or every assertion that does points at a proposition no longer in T
/// (those show up as void_assertions).
struct MissingAttestation {
    RuleId rule;
    std::vector<Assertion> void_assertions;
};

struct SharingPossibleResult {
    bool possible = false;
    std::vector<MissingAttestation> missing;
};

/// Whether a data transaction between the two participants can take place:
/// every sharing-related rule must be attested by a live proposition. The
/// verdict depends only on the framework, never on which participants are
/// named (they are merely checked for membership).
SharingPossibleResult sharing_possible(const DataSpace& space, const SharingDirection& direction);

struct SubsetCheck {
    bool ok = true;
    std::vector<TrustProposition> violations;  // propositions breaking the inclusion
};

struct OneWayReport {
    bool possible = false;
    SubsetCheck provider_condition;  // T_pp of the providing space ⊆ T_pp of the consuming space
    SubsetCheck consumer_condition;  // T_cc of the consuming space ⊆ T_cc of the providing space
};

/// Decision procedure for one-way sharing from a provider in `from` to a
/// consumer in `to`: the subset conditions on the sharing-related proposition
/// sets, adopted as both necessary and sufficient.
OneWayReport one_way_cross_sharing(const DataSpace& from, const DataSpace& to);

struct InteropProposition {
    TrustProposition proposition;
    bool independently_verifiable = false;
};

struct InteropReport {
    bool interoperable = false;
    std::vector<InteropProposition> only_in_first;
    std::vector<InteropProposition> only_in_second;
};

/// Interoperability: the sharing-related proposition sets are equal. On
/// failure the symmetric difference lists exactly what the two spaces would
/// have to reconcile.
InteropReport interop_check(const DataSpace& first, const DataSpace& second);

/// Groups spaces with equal sharing-related proposition sets; these are the
/// equivalence classes of the interoperability relation. Returns index
/// groups into the input.
std::vector<std::vector<std::size_t>> interop_classes(const std::vector<DataSpace>& spaces);

}  // namespace trustmesh::dataspace
