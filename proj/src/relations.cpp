#include "trustmesh/relations.hpp"

#include <algorithm>

namespace trustmesh::relations {

ForeignTrustResult foreign_trust(const EcosystemTrustProfile& trustor,
                                 const EcosystemTrustProfile& trustee, const ScopeId& scope) {
    ForeignTrustResult result;
    for (const auto& t : trustee.propositions) {
        if (t.scope != scope) continue;
        if (!trustor.propositions.count(t)) continue;                 // t ∈ T_i ∩ T_j
        if (trustor.domestic_providers.count(t.provider)) continue;   // p ∉ P_i
        if (!trustee.domestic_providers.count(t.provider)) continue;  // p ∈ P_j
        result.witnesses.push_back({t, trustee.eco_id});
    }
    std::sort(result.witnesses.begin(), result.witnesses.end());
    result.trusts = !result.witnesses.empty();
    return result;
}

bool direct_mutual_trust(const EcosystemTrustProfile& a, const EcosystemTrustProfile& b) {
    const auto& small = a.propositions.size() <= b.propositions.size() ? a : b;
    const auto& large = a.propositions.size() <= b.propositions.size() ? b : a;
    for (const auto& t : small.propositions) {
        if (large.propositions.count(t)) return true;
    }
    return false;
}

const char* to_string(SharedPropositionCaseId id) {
    switch (id) {
        case SharedPropositionCaseId::BothForeign:
            return "BothForeign";
        case SharedPropositionCaseId::TrusteeDomestic:
            return "TrusteeDomestic";
        case SharedPropositionCaseId::TrustorDomestic:
            return "TrustorDomestic";
        case SharedPropositionCaseId::BothDomestic:
            return "BothDomestic";
    }
    return "BothForeign";
}

namespace {

DerivedTrustEdge make_edge(const EcosystemTrustProfile& trustor,
                           const EcosystemTrustProfile& trustee, const ScopeId& scope) {
    auto outcome = foreign_trust(trustor, trustee, scope);
    return DerivedTrustEdge{trustor.eco_id, trustee.eco_id, scope, outcome.trusts,
                            std::move(outcome.witnesses)};
}

}  // namespace

SharedPropositionCase classify_shared_proposition(const TrustProposition& proposition,
                                                  const EcosystemTrustProfile& first,
                                                  const EcosystemTrustProfile& second,
                                                  const Universe* universe) {
    if (!first.propositions.count(proposition) || !second.propositions.count(proposition)) {
        throw Error(ErrorCode::NotShared,
                    "proposition is not shared by both profiles",
                    {{"first", first.eco_id}, {"second", second.eco_id}});
    }
    const bool in_first = first.domestic_providers.count(proposition.provider) > 0;
    const bool in_second = second.domestic_providers.count(proposition.provider) > 0;

    SharedPropositionCase out;
    if (!in_first && !in_second) {
        out.case_id = SharedPropositionCaseId::BothForeign;
        if (universe != nullptr) {
            for (const auto& [eco_id, profile] : universe->profiles) {
                if (!profile.domestic_providers.count(proposition.provider)) continue;
                ThirdPartyCandidate candidate;
                candidate.eco_id = eco_id;
                candidate.accepts_proposition = profile.propositions.count(proposition) > 0;
                candidate.trusted_by_first =
                    foreign_trust(first, profile, proposition.scope).trusts;
                candidate.trusted_by_second =
                    foreign_trust(second, profile, proposition.scope).trusts;
                out.candidates.push_back(std::move(candidate));
            }
        }
    } else if (!in_first && in_second) {
        out.case_id = SharedPropositionCaseId::TrusteeDomestic;
        out.consequences.push_back(make_edge(first, second, proposition.scope));
    } else if (in_first && !in_second) {
        out.case_id = SharedPropositionCaseId::TrustorDomestic;
        out.consequences.push_back(make_edge(second, first, proposition.scope));
    } else {
        out.case_id = SharedPropositionCaseId::BothDomestic;
        out.consequences.push_back(make_edge(first, second, proposition.scope));
        out.consequences.push_back(make_edge(second, first, proposition.scope));
    }
    return out;
}

std::set<std::string> trust_realm(const Universe& universe, const ScopeId& scope) {
    std::set<std::string> out;
    for (const auto& [eco_id, profile] : universe.profiles) {
        for (const auto& t : profile.propositions) {
            if (t.scope == scope) {
                out.insert(eco_id);
                break;
            }
        }
    }
    return out;
}

}  // namespace trustmesh::relations
