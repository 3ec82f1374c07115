#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <vector>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "trustmesh/equivalence.hpp"
#include "trustmesh/fragility.hpp"
#include "trustmesh/relations.hpp"

using namespace trustmesh;
using namespace trustmesh::fragility;
namespace tt = trustmesh::testing;

TEST_CASE("kappa of the identity fixture is the single witness") {
    const auto universe = tt::canada_factory_x_universe();
    const auto k = kappa(universe, "eco.ca", "eco.fx",
                         RelationSpec::foreign_trust(tt::kIdentityScope));
    CHECK(k.witnesses == std::set<TrustProposition>{tt::kFxProposition});
}

TEST_CASE("kappa refuses when the relation does not hold") {
    const auto universe = tt::canada_factory_x_universe();
    CHECK_THROWS_AS((void)kappa(universe, "eco.ca", "eco.fx",
                                RelationSpec::foreign_trust(ScopeId{"scope.none"})),
                    Error);
    try {
        (void)kappa(universe, "eco.ca", "eco.ca",
                    RelationSpec::foreign_trust(tt::kIdentityScope));
        FAIL("expected RelationDoesNotHold");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RelationDoesNotHold);
    }
}

TEST_CASE("kappa is sound and subset-minimal on small instances") {
    tt::Rng rng(1001);
    int checked = 0;
    while (checked < 60) {
        const auto universe = tt::random_universe(rng);
        for (const auto& [id_a, a] : universe.profiles) {
            for (const auto& [id_b, b] : universe.profiles) {
                if (id_a == id_b) continue;
                for (const auto& relation :
                     {RelationSpec::direct_mutual(),
                      RelationSpec::foreign_trust(ScopeId{"scope.0"}),
                      RelationSpec::foreign_trust(ScopeId{"scope.1"})}) {
                    if (!evaluate_relation(universe, id_a, id_b, relation)) continue;
                    const auto k = kappa(universe, id_a, id_b, relation);
                    CHECK_FALSE(k.witnesses.empty());
                    for (const auto& t : k.witnesses) {
                        CHECK(a.propositions.count(t) == 1);
                        CHECK(b.propositions.count(t) == 1);
                    }
                    // removing everything falsifies
                    Universe broken = universe;
                    for (const auto& t : k.witnesses) broken = withdraw(broken, id_b, t);
                    CHECK_FALSE(evaluate_relation(broken, id_a, id_b, relation));
                    // removing any single witness less keeps it alive (every
                    // witness proposition alone satisfies these relations)
                    for (const auto& keep : k.witnesses) {
                        Universe partial = universe;
                        for (const auto& t : k.witnesses) {
                            if (!(t == keep)) partial = withdraw(partial, id_b, t);
                        }
                        CHECK(evaluate_relation(partial, id_a, id_b, relation));
                    }
                    ++checked;
                }
            }
        }
    }
}

TEST_CASE("kappa for v2 equivalence breaks it through any single trustee") {
    const auto universe = tt::canada_factory_x_universe();
    const auto relation =
        RelationSpec::equiv_v2(tt::kIdentityScope, tt::kCaCredential, tt::kFxCredential);
    CHECK(evaluate_relation(universe, "eco.ca", "eco.fx", relation));

    const auto k = kappa(universe, "eco.ca", "eco.fx", relation);
    CHECK(k.witnesses == std::set<TrustProposition>{tt::kCaProposition, tt::kFxProposition});

    Universe broken = universe;
    for (const auto& t : k.witnesses) broken = withdraw(broken, "eco.fx", t);
    CHECK_FALSE(evaluate_relation(broken, "eco.ca", "eco.fx", relation));
    // the other profile still asserts everything (sovereignty)
    CHECK(broken.at("eco.ca") == universe.at("eco.ca"));
}

TEST_CASE("withdraw removes exactly one proposition from exactly one profile") {
    const auto universe = tt::canada_factory_x_universe();
    const auto next = withdraw(universe, "eco.fx", tt::kFxProposition);
    CHECK(next.at("eco.ca") == universe.at("eco.ca"));
    CHECK(next.at("eco.fx").propositions == std::set<TrustProposition>{tt::kCaProposition});
    CHECK_FALSE(
        relations::foreign_trust(next.at("eco.ca"), next.at("eco.fx"), tt::kIdentityScope).trusts);

    CHECK_THROWS_AS((void)withdraw(next, "eco.fx", tt::kFxProposition), Error);
    CHECK_THROWS_AS((void)withdraw(universe, "eco.none", tt::kFxProposition), Error);
}

TEST_CASE("withdraw then re-assert restores the original universe") {
    const auto universe = tt::canada_factory_x_universe();
    const WithdrawalEvent event{"eco.fx", tt::kFxProposition, 1, "2026-08-08T00:00:00Z"};
    auto next = withdraw(universe, event);
    next.profiles.at("eco.fx").propositions.insert(tt::kFxProposition);
    CHECK(next == universe);
    CHECK(relations::foreign_trust(next.at("eco.ca"), next.at("eco.fx"), tt::kIdentityScope)
              .trusts);
}

TEST_CASE("replaying the same withdrawals yields identical universes") {
    tt::Rng rng(321);
    for (int round = 0; round < 50; ++round) {
        const auto universe = tt::random_universe(rng);
        std::vector<std::pair<std::string, TrustProposition>> events;
        Universe current = universe;
        for (const auto& [eco_id, profile] : universe.profiles) {
            for (const auto& t : profile.propositions) {
                if (rng.chance(0.3)) {
                    current = withdraw(current, eco_id, t);
                    events.push_back({eco_id, t});
                }
            }
        }
        Universe replayed = universe;
        for (const auto& [eco_id, t] : events) replayed = withdraw(replayed, eco_id, t);
        CHECK(replayed == current);
    }
}

TEST_CASE("fragility check breaks the identity fixture edge") {
    const auto universe = tt::canada_factory_x_universe();
    const auto trace = fragility_check(universe, "eco.ca", "eco.fx",
                                       RelationSpec::foreign_trust(tt::kIdentityScope));
    CHECK_FALSE(trace.relation_holds_after);
    REQUIRE(trace.steps.size() >= 3);
    CHECK(trace.steps.front().action == "evaluate");
    CHECK(trace.steps.front().relation_holds);
    CHECK(trace.steps.back().action == "evaluate");
    CHECK_FALSE(trace.steps.back().relation_holds);

    const auto jsonl = trace.to_jsonl();
    CHECK(jsonl.find("\"relation_state\":\"broken\"") != std::string::npos);
    // one JSON record per step
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') ==
          static_cast<long>(trace.steps.size()));
}

TEST_CASE("a single shared proposition makes direct mutual trust one withdrawal fragile") {
    const TrustProposition t{ScopeId{"s"}, ProviderId{"p", std::nullopt}, CredentialId{"c"}};
    Universe universe;
    universe.profiles = {{"eco.a", {"eco.a", {}, {t}}}, {"eco.b", {"eco.b", {}, {t}}}};
    const auto trace = fragility_check(universe, "eco.a", "eco.b", RelationSpec::direct_mutual());
    CHECK(trace.kappa.witnesses.size() == 1);
    CHECK_FALSE(trace.relation_holds_after);
}

TEST_CASE("fragility check breaks every holding edge on random universes") {
    tt::Rng rng(777);
    int broken = 0;
    while (broken < 100) {
        const auto universe = tt::random_universe(rng);
        for (const auto& [id_a, a] : universe.profiles) {
            for (const auto& [id_b, b] : universe.profiles) {
                if (id_a == id_b) continue;
                for (const auto& s : universe.all_scopes()) {
                    if (!relations::foreign_trust(a, b, s).trusts) continue;
                    const auto trace =
                        fragility_check(universe, id_a, id_b, RelationSpec::foreign_trust(s));
                    CHECK_FALSE(trace.relation_holds_after);
                    // sovereignty: only the trustee's profile changed
                    for (const auto& [eco_id, profile] : universe.profiles) {
                        if (eco_id != id_b) CHECK(trace.final_universe.at(eco_id) == profile);
                    }
                    ++broken;
                }
            }
        }
    }
}

TEST_CASE("withdrawal impact reports common-pool shrinkage") {
    const auto universe = tt::canada_factory_x_universe();
    const auto impact = withdrawal_impact(universe, "eco.fx", tt::kFxProposition);
    REQUIRE(impact.removed_from_common_pool.size() == 1);
    CHECK(impact.removed_from_common_pool[0] == tt::kFxProposition);
    REQUIRE(impact.broken_foreign_trust.size() == 1);
    CHECK(impact.broken_foreign_trust[0].trustor == "eco.ca");
    CHECK(impact.broken_foreign_trust[0].trustee == "eco.fx");
    CHECK(impact.broken_foreign_trust[0].scope == tt::kIdentityScope);
}

TEST_CASE("withdrawing a monopoly provider's sole proposition collapses the credential") {
    const auto universe = tt::canada_factory_x_universe();
    const auto impact = withdrawal_impact(universe, "eco.ca", tt::kCaProposition);
    REQUIRE_FALSE(impact.monopoly_collapses.empty());
    CHECK(impact.monopoly_collapses[0].credential == tt::kCaCredential);
    CHECK(impact.monopoly_collapses[0].provider == tt::kCaProvider);
    // the credential left every v2 pair for the scope
    bool reflexive_pair_removed = false;
    for (const auto& pair : impact.removed_equivalence_pairs) {
        if (pair.c1 == tt::kCaCredential && pair.c2 == tt::kCaCredential) {
            reflexive_pair_removed = true;
        }
    }
    CHECK(reflexive_pair_removed);
}

TEST_CASE("withdrawing a proposition outside the common pool changes no v2 pair") {
    Universe universe = tt::canada_factory_x_universe();
    const TrustProposition only_here{ScopeId{"scope.local"}, ProviderId{"tsp.loc", std::nullopt},
                                     CredentialId{"cred.loc"}};
    universe.profiles.at("eco.ca").propositions.insert(only_here);
    const auto impact = withdrawal_impact(universe, "eco.ca", only_here);
    CHECK(impact.removed_from_common_pool.empty());
    CHECK(impact.removed_equivalence_pairs.empty());
    CHECK(impact.monopoly_collapses.empty());
    CHECK(impact.broken_foreign_trust.empty());
    CHECK(impact.empty());
}
