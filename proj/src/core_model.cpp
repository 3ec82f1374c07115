#include "trustmesh/core_model.hpp"

#include <cctype>

namespace trustmesh {

std::set<ScopeId> Universe::all_scopes() const {
    std::set<ScopeId> out;
    for (const auto& [id, profile] : profiles) {
        for (const auto& t : profile.propositions) out.insert(t.scope);
    }
    return out;
}

std::set<ProviderId> Universe::all_providers() const {
    std::set<ProviderId> out;
    for (const auto& [id, profile] : profiles) {
        out.insert(profile.domestic_providers.begin(), profile.domestic_providers.end());
        for (const auto& t : profile.propositions) out.insert(t.provider);
    }
    return out;
}

std::set<CredentialId> Universe::all_credentials() const {
    std::set<CredentialId> out;
    for (const auto& [id, profile] : profiles) {
        for (const auto& t : profile.propositions) out.insert(t.credential);
    }
    return out;
}

std::set<ScopeId> scopes_of(const EcosystemTrustProfile& profile) {
    std::set<ScopeId> out;
    for (const auto& t : profile.propositions) out.insert(t.scope);
    return out;
}

std::set<CredentialId> credentials_of(const EcosystemTrustProfile& profile) {
    std::set<CredentialId> out;
    for (const auto& t : profile.propositions) out.insert(t.credential);
    return out;
}

bool is_foreign(const EcosystemTrustProfile& profile, const ProviderId& provider) {
    return profile.domestic_providers.count(provider) == 0;
}

bool looks_like_uri(const std::string& text) {
    if (text.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
    std::size_t colon = std::string::npos;
    for (std::size_t i = 1; i < text.size(); ++i) {
        const char c = text[i];
        if (c == ':') {
            colon = i;
            break;
        }
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
            return false;
        }
    }
    if (colon == std::string::npos || colon + 1 >= text.size()) return false;
    for (std::size_t i = colon + 1; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c <= 0x20 || c == 0x7f) return false;
    }
    return true;
}

ValidationReport validate_profile(const EcosystemTrustProfile& profile) {
    ValidationReport report;
    if (profile.eco_id.empty()) {
        report.errors.push_back({"ecoID", "ecosystem id must be non-empty"});
    }
    for (const auto& p : profile.domestic_providers) {
        if (p.value.empty()) {
            report.errors.push_back({"domesticTSPs", "provider id must be non-empty"});
        }
        if (p.endpoint && !looks_like_uri(*p.endpoint)) {
            report.errors.push_back(
                {"domesticTSPs", "endpoint of '" + p.value + "' is not a syntactically valid URI"});
        }
    }
    std::size_t index = 0;
    for (const auto& t : profile.propositions) {
        const std::string field = "trustPropositions[" + std::to_string(index++) + "]";
        if (t.scope.value.empty()) report.errors.push_back({field, "scope must be non-empty"});
        if (t.provider.value.empty()) report.errors.push_back({field, "provider must be non-empty"});
        if (t.credential.value.empty()) {
            report.errors.push_back({field, "credential must be non-empty"});
        }
    }
    for (const auto& p : profile.domestic_providers) {
        bool referenced = false;
        for (const auto& t : profile.propositions) {
            if (t.provider == p) {
                referenced = true;
                break;
            }
        }
        if (!referenced) {
            report.warnings.push_back(
                {"domesticTSPs", "domestic provider '" + p.value + "' never appears in any proposition"});
        }
    }
    return report;
}

}  // namespace trustmesh
