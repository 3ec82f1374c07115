#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "trustmesh/relations.hpp"

using namespace trustmesh;
using namespace trustmesh::relations;
namespace tt = trustmesh::testing;

TEST_CASE("the two-ecosystem identity fixture trusts with exactly one witness") {
    const auto ca = tt::canada_profile();
    const auto fx = tt::factory_x_profile();

    const auto result = foreign_trust(ca, fx, tt::kIdentityScope);
    CHECK(result.trusts);
    REQUIRE(result.witnesses.size() == 1);
    CHECK(result.witnesses[0].proposition == tt::kFxProposition);
    CHECK(result.witnesses[0].provider_domestic_in == "eco.fx");

    // and symmetrically the other way around
    const auto reverse = foreign_trust(fx, ca, tt::kIdentityScope);
    CHECK(reverse.trusts);
    REQUIRE(reverse.witnesses.size() == 1);
    CHECK(reverse.witnesses[0].proposition == tt::kCaProposition);
}

TEST_CASE("foreign trust is irreflexive") {
    const auto ca = tt::canada_profile();
    CHECK_FALSE(foreign_trust(ca, ca, tt::kIdentityScope).trusts);

    tt::Rng rng(11);
    for (int round = 0; round < 200; ++round) {
        const auto universe = tt::random_universe(rng);
        for (const auto& [eco_id, profile] : universe.profiles) {
            for (const auto& s : scopes_of(profile)) {
                CHECK_FALSE(foreign_trust(profile, profile, s).trusts);
            }
        }
    }
}

TEST_CASE("disjoint proposition sets never trust") {
    EcosystemTrustProfile a{"eco.a", {tt::kCaProvider}, {tt::kCaProposition}};
    EcosystemTrustProfile b{"eco.b", {tt::kFxProvider}, {tt::kFxProposition}};
    CHECK_FALSE(foreign_trust(a, b, tt::kIdentityScope).trusts);
    CHECK_FALSE(direct_mutual_trust(a, b));
}

TEST_CASE("foreign trust agrees with the enumeration oracle on random universes") {
    tt::Rng rng(42);
    for (int round = 0; round < 300; ++round) {
        const auto universe = tt::random_universe(rng);
        const auto scopes = universe.all_scopes();
        for (const auto& [id_a, a] : universe.profiles) {
            for (const auto& [id_b, b] : universe.profiles) {
                for (const auto& s : scopes) {
                    const auto result = foreign_trust(a, b, s);
                    CHECK(result.trusts == tt::oracle_foreign_trust(universe, a, b, s));
                    for (const auto& w : result.witnesses) {
                        CHECK(w.proposition.scope == s);
                        CHECK(a.propositions.count(w.proposition) == 1);
                        CHECK(b.propositions.count(w.proposition) == 1);
                        CHECK(b.domestic_providers.count(w.proposition.provider) == 1);
                        CHECK(a.domestic_providers.count(w.proposition.provider) == 0);
                        CHECK(w.provider_domestic_in == id_b);
                    }
                }
            }
        }
    }
}

TEST_CASE("every trustor for a scope belongs to its trust realm") {
    tt::Rng rng(43);
    for (int round = 0; round < 100; ++round) {
        const auto universe = tt::random_universe(rng);
        for (const auto& s : universe.all_scopes()) {
            const auto realm = trust_realm(universe, s);
            CHECK(realm == tt::oracle_trust_realm(universe, s));
            for (const auto& [id_a, a] : universe.profiles) {
                for (const auto& [id_b, b] : universe.profiles) {
                    if (foreign_trust(a, b, s).trusts) CHECK(realm.count(id_a) == 1);
                }
            }
        }
    }
}

TEST_CASE("trust realm of an unknown scope is empty") {
    CHECK(trust_realm(tt::canada_factory_x_universe(), ScopeId{"scope.unknown"}).empty());
}

TEST_CASE("direct mutual trust is reflexive on non-empty profiles and symmetric") {
    const auto ca = tt::canada_profile();
    const auto fx = tt::factory_x_profile();
    CHECK(direct_mutual_trust(ca, ca));
    CHECK(direct_mutual_trust(ca, fx));
    CHECK(direct_mutual_trust(fx, ca));

    EcosystemTrustProfile empty{"eco.none", {}, {}};
    CHECK_FALSE(direct_mutual_trust(empty, empty));

    tt::Rng rng(7);
    for (int round = 0; round < 100; ++round) {
        const auto universe = tt::random_universe(rng);
        for (const auto& [id_a, a] : universe.profiles) {
            for (const auto& [id_b, b] : universe.profiles) {
                CHECK(direct_mutual_trust(a, b) == direct_mutual_trust(b, a));
            }
        }
    }
}

TEST_CASE("direct mutual trust is not transitive") {
    const TrustProposition t1{ScopeId{"s"}, ProviderId{"p1", std::nullopt}, CredentialId{"c1"}};
    const TrustProposition t2{ScopeId{"s"}, ProviderId{"p2", std::nullopt}, CredentialId{"c2"}};
    EcosystemTrustProfile e1{"eco.1", {}, {t1}};
    EcosystemTrustProfile e2{"eco.2", {}, {t1, t2}};
    EcosystemTrustProfile e3{"eco.3", {}, {t2}};
    CHECK(direct_mutual_trust(e1, e2));
    CHECK(direct_mutual_trust(e2, e3));
    CHECK_FALSE(direct_mutual_trust(e1, e3));
}

TEST_CASE("classification requires the proposition to be shared") {
    const auto ca = tt::canada_profile();
    EcosystemTrustProfile other{"eco.other", {}, {}};
    CHECK_THROWS_AS(classify_shared_proposition(tt::kCaProposition, ca, other), Error);
}

TEST_CASE("trustee-domestic provider yields the forward edge") {
    const auto ca = tt::canada_profile();
    const auto fx = tt::factory_x_profile();
    const auto shared = classify_shared_proposition(tt::kFxProposition, ca, fx);
    CHECK(shared.case_id == SharedPropositionCaseId::TrusteeDomestic);
    REQUIRE(shared.consequences.size() == 1);
    CHECK(shared.consequences[0].trustor_eco == "eco.ca");
    CHECK(shared.consequences[0].trustee_eco == "eco.fx");
    CHECK(shared.consequences[0].holds);

    const auto mirrored = classify_shared_proposition(tt::kFxProposition, fx, ca);
    CHECK(mirrored.case_id == SharedPropositionCaseId::TrustorDomestic);
    REQUIRE(mirrored.consequences.size() == 1);
    CHECK(mirrored.consequences[0].trustor_eco == "eco.ca");
    CHECK(mirrored.consequences[0].holds);
}

TEST_CASE("both-domestic provider claims both edges; they hold when other witnesses exist") {
    const ProviderId shared_provider{"tsp.shared", std::nullopt};
    const ProviderId a_only{"tsp.a", std::nullopt};
    const ProviderId b_only{"tsp.b", std::nullopt};
    const ScopeId s{"scope.s"};
    const TrustProposition t{s, shared_provider, CredentialId{"cred.t"}};
    const TrustProposition wa{s, a_only, CredentialId{"cred.a"}};
    const TrustProposition wb{s, b_only, CredentialId{"cred.b"}};

    EcosystemTrustProfile a{"eco.a", {shared_provider, a_only}, {t, wa, wb}};
    EcosystemTrustProfile b{"eco.b", {shared_provider, b_only}, {t, wa, wb}};
    const auto shared = classify_shared_proposition(t, a, b);
    CHECK(shared.case_id == SharedPropositionCaseId::BothDomestic);
    REQUIRE(shared.consequences.size() == 2);
    CHECK(shared.consequences[0].holds);
    CHECK(shared.consequences[1].holds);
}

TEST_CASE("a both-domestic provider alone witnesses neither direction") {
    // The tabled consequence of the both-domestic case is conditional: with
    // no other shared propositions there is no foreign provider to witness
    // either edge.
    const ProviderId p{"tsp.shared", std::nullopt};
    const TrustProposition t{ScopeId{"s"}, p, CredentialId{"c"}};
    EcosystemTrustProfile a{"eco.a", {p}, {t}};
    EcosystemTrustProfile b{"eco.b", {p}, {t}};
    const auto shared = classify_shared_proposition(t, a, b);
    CHECK(shared.case_id == SharedPropositionCaseId::BothDomestic);
    REQUIRE(shared.consequences.size() == 2);
    CHECK_FALSE(shared.consequences[0].holds);
    CHECK_FALSE(shared.consequences[1].holds);
    CHECK_FALSE(foreign_trust(a, b, t.scope).trusts);
    CHECK_FALSE(foreign_trust(b, a, t.scope).trusts);
}

TEST_CASE("both-foreign provider surfaces third-ecosystem candidates") {
    // Two ecosystems both lean on an identity provider domestic to a third
    // profile; the claimed edges hold exactly because the third one also
    // accepts the proposition.
    const ProviderId id_provider{"tsp.id", std::nullopt};
    const ScopeId s{"scope.identity"};
    const TrustProposition t{s, id_provider, CredentialId{"cred.id"}};

    EcosystemTrustProfile a{"eco.a", {}, {t}};
    EcosystemTrustProfile b{"eco.b", {}, {t}};
    EcosystemTrustProfile star{"eco.star", {id_provider}, {t}};
    Universe universe;
    universe.profiles = {{"eco.a", a}, {"eco.b", b}, {"eco.star", star}};

    const auto shared = classify_shared_proposition(t, a, b, &universe);
    CHECK(shared.case_id == SharedPropositionCaseId::BothForeign);
    CHECK(shared.consequences.empty());
    REQUIRE(shared.candidates.size() == 1);
    CHECK(shared.candidates[0].eco_id == "eco.star");
    CHECK(shared.candidates[0].accepts_proposition);
    CHECK(shared.candidates[0].trusted_by_first);
    CHECK(shared.candidates[0].trusted_by_second);
    CHECK(foreign_trust(a, star, s).trusts);
    CHECK(foreign_trust(b, star, s).trusts);

    // When the third ecosystem does not accept the proposition the candidate
    // is reported without the trust edges.
    universe.profiles.at("eco.star").propositions.clear();
    const auto unconfirmed = classify_shared_proposition(t, a, b, &universe);
    REQUIRE(unconfirmed.candidates.size() == 1);
    CHECK_FALSE(unconfirmed.candidates[0].accepts_proposition);
    CHECK_FALSE(unconfirmed.candidates[0].trusted_by_first);
}
