#include "trustmesh/fragility.hpp"

#include <algorithm>
#include <sstream>

#include "trustmesh/equivalence.hpp"
#include "trustmesh/json_codec.hpp"
#include "trustmesh/relations.hpp"

namespace trustmesh::fragility {

const char* to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::ForeignTrust:
            return "foreign_trust";
        case RelationKind::DirectMutual:
            return "direct_mutual";
        case RelationKind::EquivV2:
            return "equiv_v2";
    }
    return "foreign_trust";
}

std::string RelationSpec::describe() const {
    std::string out = to_string(kind);
    if (scope) out += " scope=" + scope->value;
    if (c1) out += " c1=" + c1->value;
    if (c2) out += " c2=" + c2->value;
    return out;
}

namespace {

void require_params(const RelationSpec& relation) {
    if (relation.kind == RelationKind::ForeignTrust && !relation.scope) {
        throw Error(ErrorCode::BadRequest, "foreign_trust relation needs a scope");
    }
    if (relation.kind == RelationKind::EquivV2 &&
        (!relation.scope || !relation.c1 || !relation.c2)) {
        throw Error(ErrorCode::BadRequest, "equiv_v2 relation needs a scope and two credentials");
    }
}

}  // namespace

bool evaluate_relation(const Universe& universe, const std::string& trustor,
                       const std::string& trustee, const RelationSpec& relation) {
    require_params(relation);
    const auto& trustor_profile = universe.at(trustor);
    const auto& trustee_profile = universe.at(trustee);
    switch (relation.kind) {
        case RelationKind::ForeignTrust:
            return relations::foreign_trust(trustor_profile, trustee_profile, *relation.scope)
                .trusts;
        case RelationKind::DirectMutual:
            return relations::direct_mutual_trust(trustor_profile, trustee_profile);
        case RelationKind::EquivV2:
            return equivalence::equiv_v2(universe, *relation.scope, *relation.c1, *relation.c2);
    }
    return false;
}

KappaSet kappa(const Universe& universe, const std::string& trustor, const std::string& trustee,
               const RelationSpec& relation) {
    require_params(relation);
    const auto& trustor_profile = universe.at(trustor);
    const auto& trustee_profile = universe.at(trustee);

    KappaSet out{trustor, trustee, relation, {}};
    switch (relation.kind) {
        case RelationKind::ForeignTrust: {
            auto result = relations::foreign_trust(trustor_profile, trustee_profile, *relation.scope);
            for (const auto& w : result.witnesses) out.witnesses.insert(w.proposition);
            break;
        }
        case RelationKind::DirectMutual: {
            for (const auto& t : trustor_profile.propositions) {
                if (trustee_profile.propositions.count(t)) out.witnesses.insert(t);
            }
            break;
        }
        case RelationKind::EquivV2: {
            // Witnesses are the common-pool propositions carrying either
            // credential under the scope; they sit in every profile's T, so
            // removing them from the trustee alone falsifies the relation.
            if (!equivalence::equiv_v2(universe, *relation.scope, *relation.c1, *relation.c2)) {
                break;
            }
            for (const auto& t : equivalence::common_pool(universe)) {
                if (t.scope == *relation.scope &&
                    (t.credential == *relation.c1 || t.credential == *relation.c2)) {
                    out.witnesses.insert(t);
                }
            }
            break;
        }
    }
    if (out.witnesses.empty()) {
        throw Error(ErrorCode::RelationDoesNotHold,
                    "relation does not hold: " + relation.describe(),
                    {{"trustor", trustor}, {"trustee", trustee}});
    }
    return out;
}

Universe withdraw(const Universe& universe, const std::string& eco_id,
                  const TrustProposition& proposition) {
    Universe next = universe;
    auto it = next.profiles.find(eco_id);
    if (it == next.profiles.end()) {
        throw Error(ErrorCode::UnknownEcosystem, "unknown ecosystem: " + eco_id,
                    {{"ecoID", eco_id}});
    }
    if (it->second.propositions.erase(proposition) == 0) {
        throw Error(ErrorCode::PropositionAbsent,
                    "proposition is not asserted by " + eco_id,
                    {{"ecoID", eco_id}, {"proposition", codec::to_json(proposition)}});
    }
    return next;
}

Universe withdraw(const Universe& universe, const WithdrawalEvent& event) {
    return withdraw(universe, event.eco_id, event.proposition);
}

FragilityTrace fragility_check(const Universe& universe, const std::string& trustor,
                               const std::string& trustee, const RelationSpec& relation) {
    FragilityTrace trace;
    trace.kappa = kappa(universe, trustor, trustee, relation);
    trace.final_universe = universe;
    trace.steps.push_back({"evaluate", std::nullopt, true});
    bool holds = true;
    for (const auto& witness : trace.kappa.witnesses) {
        trace.final_universe = withdraw(trace.final_universe, trustee, witness);
        holds = evaluate_relation(trace.final_universe, trustor, trustee, relation);
        trace.steps.push_back({"withdraw", witness, holds});
    }
    trace.steps.push_back({"evaluate", std::nullopt, holds});
    trace.relation_holds_after = holds;
    return trace;
}

std::string FragilityTrace::to_jsonl() const {
    std::ostringstream out;
    for (const auto& step : steps) {
        nlohmann::json record{{"action", step.action},
                              {"relation_state", step.relation_holds ? "holds" : "broken"}};
        if (step.proposition) record["proposition"] = codec::to_json(*step.proposition);
        out << record.dump() << '\n';
    }
    return out.str();
}

namespace {

std::vector<RemovedEquivalencePair> v2_pairs_for_scope(const Universe& universe,
                                                       const ScopeId& scope) {
    std::vector<RemovedEquivalencePair> pairs;
    if (universe.profiles.empty()) return pairs;
    std::set<CredentialId> members;
    for (const auto& t : equivalence::common_pool(universe)) {
        if (t.scope == scope) members.insert(t.credential);
    }
    for (auto it = members.begin(); it != members.end(); ++it) {
        for (auto jt = it; jt != members.end(); ++jt) {
            pairs.push_back({scope, *it, *jt});
        }
    }
    return pairs;
}

}  // namespace

ImpactReport withdrawal_impact(const Universe& universe, const std::string& eco_id,
                               const TrustProposition& proposition) {
    const Universe after = withdraw(universe, eco_id, proposition);

    ImpactReport report;
    report.eco_id = eco_id;
    report.proposition = proposition;

    const auto scopes = universe.all_scopes();
    for (const auto& [id_a, profile_a] : universe.profiles) {
        for (const auto& [id_b, profile_b] : universe.profiles) {
            if (id_a == id_b) continue;
            for (const auto& scope : scopes) {
                if (relations::foreign_trust(profile_a, profile_b, scope).trusts &&
                    !relations::foreign_trust(after.at(id_a), after.at(id_b), scope).trusts) {
                    report.broken_foreign_trust.push_back({id_a, id_b, scope});
                }
            }
            if (id_a < id_b && relations::direct_mutual_trust(profile_a, profile_b) &&
                !relations::direct_mutual_trust(after.at(id_a), after.at(id_b))) {
                report.broken_direct_mutual.push_back({id_a, id_b});
            }
        }
    }
    std::sort(report.broken_foreign_trust.begin(), report.broken_foreign_trust.end());
    std::sort(report.broken_direct_mutual.begin(), report.broken_direct_mutual.end());

    const auto pool_before = equivalence::common_pool(universe);
    const auto pool_after = equivalence::common_pool(after);
    for (const auto& t : pool_before) {
        if (!pool_after.count(t)) report.removed_from_common_pool.push_back(t);
    }

    for (const auto& scope : scopes) {
        const auto before_pairs = v2_pairs_for_scope(universe, scope);
        std::set<RemovedEquivalencePair> after_pairs;
        for (const auto& p : v2_pairs_for_scope(after, scope)) after_pairs.insert(p);
        std::set<CredentialId> dropped;  // credentials that left the scope's class entirely
        for (const auto& pair : before_pairs) {
            if (!after_pairs.count(pair)) {
                report.removed_equivalence_pairs.push_back(pair);
                if (pair.c1 == pair.c2) dropped.insert(pair.c1);
            }
        }
        for (const auto& credential : dropped) {
            const auto monopoly = equivalence::monopoly_providers(universe, scope, credential);
            if (monopoly.monopoly) {
                report.monopoly_collapses.push_back({scope, credential, *monopoly.providers.begin()});
            }
        }
    }
    std::sort(report.removed_equivalence_pairs.begin(), report.removed_equivalence_pairs.end());
    std::sort(report.monopoly_collapses.begin(), report.monopoly_collapses.end());
    return report;
}

}  // namespace trustmesh::fragility
