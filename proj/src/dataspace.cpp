#include "trustmesh/dataspace.hpp"

#include <algorithm>
#include <map>

namespace trustmesh::dataspace {
namespace {

void require_consistent(const TrustFramework& framework) {
    const auto report = check_framework_consistency(framework);
    if (!report.consistent) {
        nlohmann::json rules = nlohmann::json::array();
        for (const auto& r : report.unattested_rules) rules.push_back(r.value);
        throw Error(ErrorCode::InconsistentFramework,
                    "trust framework has rules no proposition attests",
                    {{"unattested_rules", rules}});
    }
}

}  // namespace

ConsistencyReport check_framework_consistency(const TrustFramework& framework) {
    ConsistencyReport report;
    for (const auto& rule : framework.rules) {
        bool attested = false;
        for (const auto& a : framework.assertions) {
            if (a.rule == rule && framework.propositions.count(a.proposition)) {
                attested = true;
                break;
            }
        }
        if (!attested) report.unattested_rules.push_back(rule);
    }
    report.consistent = report.unattested_rules.empty();
    return report;
}

SharingPropositions sharing_propositions(const DataSpace& space) {
    require_consistent(space.framework);
    SharingPropositions out;
    for (const auto& a : space.framework.assertions) {
        if (!space.framework.propositions.count(a.proposition)) continue;
        if (space.sharing.provider_facing.count(a.rule)) out.provider_facing.insert(a.proposition);
        if (space.sharing.consumer_facing.count(a.rule)) out.consumer_facing.insert(a.proposition);
    }
    out.all = out.provider_facing;
    out.all.insert(out.consumer_facing.begin(), out.consumer_facing.end());
    return out;
}

SharingPossibleResult sharing_possible(const DataSpace& space, const SharingDirection& direction) {
    for (const auto& participant : {direction.provider, direction.consumer}) {
        if (!space.participants.count(participant)) {
            throw Error(ErrorCode::UnknownParticipant,
                        "participant is not in the data space: " + participant.value,
                        {{"participant", participant.value}});
        }
    }
    std::set<RuleId> sharing_rules = space.sharing.provider_facing;
    sharing_rules.insert(space.sharing.consumer_facing.begin(),
                         space.sharing.consumer_facing.end());

    SharingPossibleResult result;
    for (const auto& rule : sharing_rules) {
        bool satisfied = false;
        std::vector<Assertion> void_assertions;
        for (const auto& a : space.framework.assertions) {
            if (a.rule != rule) continue;
            if (space.framework.propositions.count(a.proposition)) {
                satisfied = true;
                break;
            }
            void_assertions.push_back(a);
        }
        if (!satisfied) {
            result.missing.push_back({rule, std::move(void_assertions)});
        }
    }
    result.possible = result.missing.empty();
    return result;
}

namespace {

SubsetCheck check_subset(const std::set<TrustProposition>& smaller,
                         const std::set<TrustProposition>& larger) {
    SubsetCheck check;
    for (const auto& t : smaller) {
        if (!larger.count(t)) check.violations.push_back(t);
    }
    check.ok = check.violations.empty();
    return check;
}

}  // namespace

OneWayReport one_way_cross_sharing(const DataSpace& from, const DataSpace& to) {
    const auto from_sets = sharing_propositions(from);
    const auto to_sets = sharing_propositions(to);

    OneWayReport report;
    report.provider_condition = check_subset(from_sets.provider_facing, to_sets.provider_facing);
    report.consumer_condition = check_subset(to_sets.consumer_facing, from_sets.consumer_facing);
    report.possible = report.provider_condition.ok && report.consumer_condition.ok;
    return report;
}

InteropReport interop_check(const DataSpace& first, const DataSpace& second) {
    const auto first_sets = sharing_propositions(first);
    const auto second_sets = sharing_propositions(second);

    auto annotate = [&](const TrustProposition& t) {
        return InteropProposition{
            t, first.independently_verifiable.count(t) > 0 ||
                   second.independently_verifiable.count(t) > 0};
    };

    InteropReport report;
    for (const auto& t : first_sets.all) {
        if (!second_sets.all.count(t)) report.only_in_first.push_back(annotate(t));
    }
    for (const auto& t : second_sets.all) {
        if (!first_sets.all.count(t)) report.only_in_second.push_back(annotate(t));
    }
    report.interoperable = report.only_in_first.empty() && report.only_in_second.empty();
    return report;
}

std::vector<std::vector<std::size_t>> interop_classes(const std::vector<DataSpace>& spaces) {
    std::map<std::set<TrustProposition>, std::vector<std::size_t>> grouped;
    std::vector<std::set<TrustProposition>> keys;  // first-seen order of the group keys
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        auto key = sharing_propositions(spaces[i]).all;
        if (!grouped.count(key)) keys.push_back(key);
        grouped[key].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& key : keys) out.push_back(grouped[key]);
    return out;
}

}  // namespace trustmesh::dataspace
