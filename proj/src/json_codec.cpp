#include "trustmesh/json_codec.hpp"

namespace trustmesh::codec {

nlohmann::json to_json(const TrustProposition& t) {
    return nlohmann::json{{"ecoTrustScope", t.scope.value},
                          {"ecoTSP", t.provider.value},
                          {"ecoCredentialType", t.credential.value}};
}

TrustProposition proposition_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) {
        throw Error(ErrorCode::SchemaError, where + " must be an object", {{"field", where}});
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "ecoTrustScope" && key != "ecoTSP" && key != "ecoCredentialType") {
            throw Error(ErrorCode::SchemaError, where + " has unknown field '" + key + "'",
                        {{"field", where + "." + key}});
        }
    }
    TrustProposition t;
    for (const char* key : {"ecoTrustScope", "ecoTSP", "ecoCredentialType"}) {
        if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
            throw Error(ErrorCode::SchemaError,
                        where + "." + key + " must be a non-empty string",
                        {{"field", where + "." + key}});
        }
    }
    t.scope.value = j["ecoTrustScope"].get<std::string>();
    t.provider.value = j["ecoTSP"].get<std::string>();
    t.credential.value = j["ecoCredentialType"].get<std::string>();
    return t;
}

nlohmann::json to_json(const ValidationReport& report) {
    auto issues = [](const std::vector<ValidationIssue>& list) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& issue : list) {
            arr.push_back({{"field", issue.field}, {"message", issue.message}});
        }
        return arr;
    };
    return nlohmann::json{
        {"valid", report.ok()}, {"errors", issues(report.errors)}, {"warnings", issues(report.warnings)}};
}

nlohmann::json to_json(const relations::TrustWitness& witness) {
    return nlohmann::json{{"proposition", to_json(witness.proposition)},
                          {"provider_domestic_in", witness.provider_domestic_in}};
}

nlohmann::json to_json(const relations::ForeignTrustResult& result) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : result.witnesses) witnesses.push_back(to_json(w));
    return nlohmann::json{{"trusts", result.trusts}, {"witnesses", witnesses}};
}

nlohmann::json to_json(const relations::SharedPropositionCase& shared) {
    nlohmann::json consequences = nlohmann::json::array();
    for (const auto& edge : shared.consequences) {
        nlohmann::json witnesses = nlohmann::json::array();
        for (const auto& w : edge.witnesses) witnesses.push_back(to_json(w));
        consequences.push_back({{"trustor", edge.trustor_eco},
                                {"trustee", edge.trustee_eco},
                                {"scope", edge.scope.value},
                                {"holds", edge.holds},
                                {"witnesses", witnesses}});
    }
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : shared.candidates) {
        candidates.push_back({{"eco_id", c.eco_id},
                              {"accepts_proposition", c.accepts_proposition},
                              {"trusted_by_first", c.trusted_by_first},
                              {"trusted_by_second", c.trusted_by_second}});
    }
    return nlohmann::json{{"case", relations::to_string(shared.case_id)},
                          {"consequences", consequences},
                          {"candidates", candidates}};
}

nlohmann::json to_json(const equivalence::EquivalenceReport& report) {
    nlohmann::json scopes = nlohmann::json::array();
    for (const auto& entry : report.scopes) {
        nlohmann::json classes = nlohmann::json::array();
        for (const auto& cls : entry.classes) {
            nlohmann::json members = nlohmann::json::array();
            for (const auto& c : cls) members.push_back(c.value);
            classes.push_back(members);
        }
        scopes.push_back({{"scope", entry.scope.value}, {"classes", classes}});
    }
    nlohmann::json catalog = nlohmann::json::array();
    for (const auto& row : report.catalog) {
        catalog.push_back({{"ecoTrustScope", row.scope.value},
                           {"ecoID", row.eco_id},
                           {"ecoTSP", row.provider.value},
                           {"ecoCredentialType", row.credential.value}});
    }
    nlohmann::json out{
        {"mode", equivalence::to_string(report.mode)}, {"scopes", scopes}, {"catalog", catalog}};
    if (report.partition_ok) out["partition_ok"] = *report.partition_ok;
    if (report.common_pool_size) out["common_pool_size"] = *report.common_pool_size;
    return out;
}

nlohmann::json to_json(const equivalence::ImposterAttackTrace& trace) {
    nlohmann::json targets = nlohmann::json::array();
    for (const auto& c : trace.targets) targets.push_back(c.value);
    return nlohmann::json{{"scope", trace.scope.value},
                          {"imposter_eco", trace.imposter.eco_id},
                          {"planted", to_json(trace.planted)},
                          {"targets", targets},
                          {"v1_all_equivalent", trace.v1_all_equivalent},
                          {"v2_none_equivalent", trace.v2_none_equivalent},
                          {"class_size_before", trace.class_size_before},
                          {"class_size_after", trace.class_size_after}};
}

nlohmann::json to_json(const fragility::KappaSet& kappa) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& t : kappa.witnesses) witnesses.push_back(to_json(t));
    nlohmann::json relation{{"kind", fragility::to_string(kappa.relation.kind)}};
    if (kappa.relation.scope) relation["scope"] = kappa.relation.scope->value;
    if (kappa.relation.c1) relation["c1"] = kappa.relation.c1->value;
    if (kappa.relation.c2) relation["c2"] = kappa.relation.c2->value;
    return nlohmann::json{{"trustor", kappa.trustor},
                          {"trustee", kappa.trustee},
                          {"relation", relation},
                          {"witnesses", witnesses}};
}

nlohmann::json to_json(const fragility::ImpactReport& report) {
    nlohmann::json foreign = nlohmann::json::array();
    for (const auto& e : report.broken_foreign_trust) {
        foreign.push_back(
            {{"trustor", e.trustor}, {"trustee", e.trustee}, {"scope", e.scope.value}});
    }
    nlohmann::json mutual = nlohmann::json::array();
    for (const auto& e : report.broken_direct_mutual) {
        mutual.push_back({{"first", e.first}, {"second", e.second}});
    }
    nlohmann::json pool = nlohmann::json::array();
    for (const auto& t : report.removed_from_common_pool) pool.push_back(to_json(t));
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.removed_equivalence_pairs) {
        pairs.push_back({{"scope", p.scope.value}, {"c1", p.c1.value}, {"c2", p.c2.value}});
    }
    nlohmann::json collapses = nlohmann::json::array();
    for (const auto& m : report.monopoly_collapses) {
        collapses.push_back({{"scope", m.scope.value},
                             {"credential", m.credential.value},
                             {"provider", m.provider.value}});
    }
    return nlohmann::json{{"eco_id", report.eco_id},
                          {"proposition", to_json(report.proposition)},
                          {"broken_foreign_trust", foreign},
                          {"broken_direct_mutual", mutual},
                          {"removed_from_common_pool", pool},
                          {"removed_equivalence_pairs", pairs},
                          {"monopoly_collapses", collapses}};
}

namespace {

nlohmann::json to_json_subset(const dataspace::SubsetCheck& check) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& t : check.violations) violations.push_back(to_json(t));
    return nlohmann::json{{"ok", check.ok}, {"violations", violations}};
}

}  // namespace

nlohmann::json to_json(const dataspace::OneWayReport& report) {
    return nlohmann::json{{"possible", report.possible},
                          {"provider_condition", to_json_subset(report.provider_condition)},
                          {"consumer_condition", to_json_subset(report.consumer_condition)}};
}

nlohmann::json to_json(const dataspace::InteropReport& report) {
    nlohmann::json diff = nlohmann::json::array();
    for (const auto& p : report.only_in_first) {
        diff.push_back({{"proposition", to_json(p.proposition)},
                        {"only_in", "a"},
                        {"independently_verifiable", p.independently_verifiable}});
    }
    for (const auto& p : report.only_in_second) {
        diff.push_back({{"proposition", to_json(p.proposition)},
                        {"only_in", "b"},
                        {"independently_verifiable", p.independently_verifiable}});
    }
    return nlohmann::json{{"interoperable", report.interoperable}, {"symmetric_difference", diff}};
}

nlohmann::json to_json(const dataspace::ConsistencyReport& report) {
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : report.unattested_rules) rules.push_back(r.value);
    return nlohmann::json{{"consistent", report.consistent}, {"unattested_rules", rules}};
}

}  // namespace trustmesh::codec
