#pragma once

// Trust relations between ecosystems: the scope-indexed foreign trust
// relation, direct mutual trust, trust realms, and the four-way
// classification of a proposition shared by two profiles.

#include <optional>
#include <string>
#include <vector>

#include "trustmesh/core_model.hpp"

namespace trustmesh::relations {

/// One reason a foreign-trust edge holds: a shared proposition whose provider
/// is domestic to the trustee and foreign to the trustor.
struct TrustWitness {
    TrustProposition proposition;
    std::string provider_domestic_in;  // always the trustee's eco id

    auto operator<=>(const TrustWitness&) const = default;
};

struct ForeignTrustResult {
    bool trusts = false;
    std::vector<TrustWitness> witnesses;  // sorted, complete
};

/// Scope-indexed foreign trust: the trustor accepts, for this scope, a
/// credential issued by a provider domestic to the trustee but not to the
/// trustor. Returns every witness. Self-queries are well-defined and always
/// false (there is no provider foreign to oneself).
ForeignTrustResult foreign_trust(const EcosystemTrustProfile& trustor,
                                 const EcosystemTrustProfile& trustee, const ScopeId& scope);

/// Direct mutual trust: the two profiles share at least one proposition.
/// Symmetric, reflexive on non-empty profiles, not transitive.
bool direct_mutual_trust(const EcosystemTrustProfile& a, const EcosystemTrustProfile& b);

enum class SharedPropositionCaseId {
    BothForeign,      // provider domestic to neither profile
    TrusteeDomestic,  // provider domestic only to the second profile
    TrustorDomestic,  // provider domestic only to the first profile
    BothDomestic,     // provider domestic to both
};

const char* to_string(SharedPropositionCaseId id);

/// A directed edge the case table claims; `holds` is the evaluated truth of
/// the claim against the actual profiles. TrusteeDomestic/TrustorDomestic
/// edges always hold (the shared proposition is itself a witness); a
/// BothDomestic provider witnesses neither direction by itself, so those
/// edges hold only when other shared propositions supply witnesses.
struct DerivedTrustEdge {
    std::string trustor_eco;
    std::string trustee_eco;
    ScopeId scope;
    bool holds = false;
    std::vector<TrustWitness> witnesses;
};

/// For BothForeign: an ecosystem the shared provider is domestic to. The
/// case-table consequence (both profiles foreign-trust some third ecosystem)
/// only follows when that ecosystem also accepts the proposition, so each
/// candidate carries the evaluated facts instead of a bare claim.
struct ThirdPartyCandidate {
    std::string eco_id;
    bool accepts_proposition = false;
    bool trusted_by_first = false;
    bool trusted_by_second = false;
};

struct SharedPropositionCase {
    SharedPropositionCaseId case_id;
    std::vector<DerivedTrustEdge> consequences;
    std::vector<ThirdPartyCandidate> candidates;  // BothForeign only, needs a universe
};

/// Classifies a proposition shared by both profiles by where its provider is
/// domestic. Throws NotShared when the proposition is not in both proposition
/// sets. The universe, when given, is scanned for BothForeign candidates.
SharedPropositionCase classify_shared_proposition(const TrustProposition& proposition,
                                                  const EcosystemTrustProfile& first,
                                                  const EcosystemTrustProfile& second,
                                                  const Universe* universe = nullptr);

/// Trust realm of a scope: every ecosystem accepting at least one proposition
/// for it.
std::set<std::string> trust_realm(const Universe& universe, const ScopeId& scope);

}  // namespace trustmesh::relations
