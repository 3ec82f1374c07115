#include "trustmesh/equivalence.hpp"

#include <algorithm>

namespace trustmesh::equivalence {
namespace {

nlohmann::json violations_json(const std::set<CredentialId>& violations) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : violations) arr.push_back(c.value);
    return nlohmann::json{{"violations", arr}};
}

void require_partition(const Universe& universe) {
    const auto report = check_partition(build_scope_credential_index(universe));
    if (!report.is_partition) {
        throw Error(ErrorCode::PartitionViolated,
                    "per-scope credential sets do not partition the universe's credentials",
                    violations_json(report.violations));
    }
}

// Union-find over credential ids; classes are emitted in lexicographic order.
class DisjointSet {
public:
    void add(const std::string& item) { parent_.emplace(item, item); }

    void unite(const std::string& a, const std::string& b) {
        add(a);
        add(b);
        parent_[find(a)] = find(b);
    }

    std::vector<std::vector<CredentialId>> classes() {
        std::map<std::string, std::vector<CredentialId>> grouped;
        for (const auto& [item, ignored] : parent_) {
            grouped[find(item)].push_back(CredentialId{item});
        }
        std::vector<std::vector<CredentialId>> out;
        for (auto& [root, members] : grouped) {
            std::sort(members.begin(), members.end());
            out.push_back(std::move(members));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::string find(const std::string& item) {
        std::string current = item;
        while (parent_[current] != current) current = parent_[current];
        // path compression
        std::string walk = item;
        while (parent_[walk] != current) {
            std::string next = parent_[walk];
            parent_[walk] = current;
            walk = next;
        }
        return current;
    }

    std::map<std::string, std::string> parent_;
};

std::vector<std::vector<CredentialId>> clique_classes(const std::set<CredentialId>& members) {
    DisjointSet dsu;
    const CredentialId* first = nullptr;
    for (const auto& c : members) {
        dsu.add(c.value);
        if (first) dsu.unite(first->value, c.value);
        first = &c;
    }
    return dsu.classes();
}

}  // namespace

std::set<CredentialId> credentials_for_scope(const Universe& universe, const ScopeId& scope) {
    std::set<CredentialId> out;
    for (const auto& [eco_id, profile] : universe.profiles) {
        for (const auto& t : profile.propositions) {
            if (t.scope == scope) out.insert(t.credential);
        }
    }
    return out;
}

ScopeCredentialIndex build_scope_credential_index(const Universe& universe) {
    ScopeCredentialIndex index;
    for (const auto& [eco_id, profile] : universe.profiles) {
        for (const auto& t : profile.propositions) {
            index.by_scope[t.scope].insert(t.credential);
            index.universe_credentials.insert(t.credential);
        }
    }
    return index;
}

PartitionReport check_partition(const ScopeCredentialIndex& index) {
    PartitionReport report;
    std::map<CredentialId, std::size_t> scope_count;
    for (const auto& [scope, credentials] : index.by_scope) {
        for (const auto& c : credentials) ++scope_count[c];
    }
    for (const auto& [credential, count] : scope_count) {
        if (count >= 2) report.violations.insert(credential);
    }
    report.is_partition = report.violations.empty();
    return report;
}

bool equiv_v1(const Universe& universe, const CredentialId& c1, const CredentialId& c2) {
    const auto index = build_scope_credential_index(universe);
    const auto partition = check_partition(index);
    if (!partition.is_partition) {
        throw Error(ErrorCode::PartitionViolated,
                    "per-scope credential sets do not partition the universe's credentials",
                    violations_json(partition.violations));
    }
    for (const auto& [scope, credentials] : index.by_scope) {
        if (credentials.count(c1) && credentials.count(c2)) return true;
    }
    return false;
}

std::set<TrustProposition> common_pool(const Universe& universe) {
    if (universe.profiles.empty()) {
        throw Error(ErrorCode::EmptyUniverse, "common pool over an empty universe is undefined");
    }
    auto it = universe.profiles.begin();
    std::set<TrustProposition> pool = it->second.propositions;
    for (++it; it != universe.profiles.end() && !pool.empty(); ++it) {
        std::set<TrustProposition> kept;
        for (const auto& t : pool) {
            if (it->second.propositions.count(t)) kept.insert(t);
        }
        pool = std::move(kept);
    }
    return pool;
}

bool equiv_v2(const Universe& universe, const ScopeId& scope, const CredentialId& c1,
              const CredentialId& c2) {
    const auto pool = common_pool(universe);
    bool c1_present = false;
    bool c2_present = false;
    for (const auto& t : pool) {
        if (t.scope != scope) continue;
        if (t.credential == c1) c1_present = true;
        if (t.credential == c2) c2_present = true;
        if (c1_present && c2_present) return true;
    }
    return false;
}

MonopolyReport monopoly_providers(const Universe& universe, const ScopeId& scope,
                                  const CredentialId& credential) {
    MonopolyReport report;
    for (const auto& [eco_id, profile] : universe.profiles) {
        for (const auto& t : profile.propositions) {
            if (t.scope == scope && t.credential == credential) report.providers.insert(t.provider);
        }
    }
    report.monopoly = report.providers.size() == 1;
    return report;
}

ImposterAttackTrace demonstrate_imposter_attack(const Universe& universe, const ScopeId& scope) {
    ImposterAttackTrace trace;
    trace.scope = scope;
    trace.targets = credentials_for_scope(universe, scope);
    if (trace.targets.empty()) {
        throw Error(ErrorCode::EmptyScope, "no credentials accepted under scope " + scope.value,
                    {{"scope", scope.value}});
    }
    require_partition(universe);

    // Fresh identifiers: bump a suffix until nothing in the universe collides.
    const auto providers = universe.all_providers();
    const auto credentials = universe.all_credentials();
    std::size_t n = 0;
    std::string eco_id;
    ProviderId provider;
    CredentialId credential;
    do {
        const std::string suffix = std::to_string(n++);
        eco_id = "imposter.eco." + suffix;
        provider = ProviderId{"imposter.tsp." + suffix, std::nullopt};
        credential = CredentialId{"imposter.cred." + suffix};
    } while (universe.contains(eco_id) || providers.count(provider) ||
             credentials.count(credential));

    trace.planted = TrustProposition{scope, provider, credential};
    trace.imposter = EcosystemTrustProfile{eco_id, {provider}, {trace.planted}};

    trace.class_size_before = trace.targets.size();
    trace.class_count_for_scope_before = 1;  // every in-scope credential shares the scope

    trace.post_universe = universe;
    trace.post_universe.profiles.emplace(eco_id, trace.imposter);

    trace.v1_all_equivalent = true;
    trace.v2_none_equivalent = true;
    for (const auto& target : trace.targets) {
        if (!equiv_v1(trace.post_universe, credential, target)) trace.v1_all_equivalent = false;
        if (equiv_v2(trace.post_universe, scope, credential, target)) {
            trace.v2_none_equivalent = false;
        }
    }

    const auto after = credentials_for_scope(trace.post_universe, scope);
    trace.class_size_after = after.size();
    trace.class_count_for_scope_after = 1;
    return trace;
}

const char* to_string(EquivalenceMode mode) {
    return mode == EquivalenceMode::V1 ? "v1" : "v2";
}

EquivalenceReport equivalence_report(const Universe& universe, EquivalenceMode mode,
                                     const std::optional<ScopeId>& scope) {
    EquivalenceReport report;
    report.mode = mode;

    std::set<ScopeId> scopes;
    if (scope) {
        scopes.insert(*scope);
    } else {
        scopes = universe.all_scopes();
    }

    if (mode == EquivalenceMode::V1) {
        require_partition(universe);
        report.partition_ok = true;
        for (const auto& s : scopes) {
            report.scopes.push_back({s, clique_classes(credentials_for_scope(universe, s))});
        }
        for (const auto& [eco_id, profile] : universe.profiles) {
            for (const auto& t : profile.propositions) {
                if (scopes.count(t.scope)) {
                    report.catalog.push_back({t.scope, eco_id, t.provider, t.credential});
                }
            }
        }
    } else {
        const auto pool = common_pool(universe);
        report.common_pool_size = pool.size();
        for (const auto& s : scopes) {
            std::set<CredentialId> members;
            for (const auto& t : pool) {
                if (t.scope == s) members.insert(t.credential);
            }
            report.scopes.push_back({s, clique_classes(members)});
        }
        for (const auto& [eco_id, profile] : universe.profiles) {
            for (const auto& t : profile.propositions) {
                if (scopes.count(t.scope) && pool.count(t)) {
                    report.catalog.push_back({t.scope, eco_id, t.provider, t.credential});
                }
            }
        }
    }
    std::sort(report.catalog.begin(), report.catalog.end());
    return report;
}

}  // namespace trustmesh::equivalence
