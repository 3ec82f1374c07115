#include "trustmesh/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trustmesh/equivalence.hpp"
#include "trustmesh/fragility.hpp"
#include "trustmesh/json_codec.hpp"
#include "trustmesh/profile_document.hpp"
#include "trustmesh/registry_service.hpp"
#include "trustmesh/registry_store.hpp"
#include "trustmesh/relations.hpp"

namespace trustmesh::cli {
namespace {

constexpr int kOk = 0;
constexpr int kDomainNegative = 1;
constexpr int kUsageError = 2;
constexpr int kStoreError = 3;

struct Settings {
    std::optional<std::string> store_dir;
    bool human = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::StorageError, "cannot read file: " + path, {{"path", path}});
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_table(std::ostream& out, const std::vector<std::string>& headers,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& h : headers) widths.push_back(h.size());
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    auto print_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << row[i];
            if (i + 1 < row.size()) out << std::string(widths[i] - row[i].size() + 2, ' ');
        }
        out << '\n';
    };
    print_row(headers);
    std::vector<std::string> rule;
    for (auto w : widths) rule.push_back(std::string(w, '-'));
    print_row(rule);
    for (const auto& row : rows) print_row(row);
}

void emit(std::ostream& out, const Settings& settings, const nlohmann::json& body,
          const std::vector<std::string>& headers = {},
          const std::vector<std::vector<std::string>>& rows = {}) {
    if (settings.human && !headers.empty()) {
        print_table(out, headers, rows);
    } else {
        out << body.dump(2) << '\n';
    }
}

std::vector<std::vector<std::string>> proposition_rows(const nlohmann::json& list,
                                                       const char* key = nullptr) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& item : list) {
        const auto& p = key ? item.at(key) : item;
        rows.push_back({p.at("ecoTrustScope").get<std::string>(),
                        p.at("ecoTSP").get<std::string>(),
                        p.at("ecoCredentialType").get<std::string>()});
    }
    return rows;
}

store::RegistryStore open_store(const Settings& settings) {
    return store::RegistryStore(store::RegistryStore::resolve_dir(settings.store_dir));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"trustmesh: publish ecosystem trust profiles and query the trust relations, "
                 "credential equivalences, and data-space interoperability they induce"};
    app.require_subcommand(1);

    Settings settings;
    std::string store_dir;
    app.add_option("--store", store_dir, "store directory (or TRUSTMESH_STORE_DIR)");
    app.add_flag("--human", settings.human, "render tables instead of JSON");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "publish profile documents (- for stdin)");
    std::vector<std::string> ingest_files;
    ingest->add_option("files", ingest_files, "profile documents (.etp.json)")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "check a profile document");
    std::string validate_file;
    validate->add_option("file", validate_file, "document to check")->required();

    // list / show
    auto* list = app.add_subcommand("list", "list known ecosystem ids");
    auto* show = app.add_subcommand("show", "print a stored profile document");
    std::string show_id;
    show->add_option("ecoID", show_id, "ecosystem id")->required();

    // trusts
    auto* trusts = app.add_subcommand("trusts", "evaluate the foreign trust relation");
    std::string trusts_from, trusts_to, trusts_scope;
    bool trusts_assert = false;
    trusts->add_option("--from", trusts_from, "trustor ecosystem")->required();
    trusts->add_option("--to", trusts_to, "trustee ecosystem")->required();
    trusts->add_option("--scope", trusts_scope, "trust scope")->required();
    trusts->add_flag("--assert", trusts_assert, "exit 1 when the relation does not hold");

    // realm
    auto* realm = app.add_subcommand("realm", "ecosystems accepting a scope");
    std::string realm_scope;
    realm->add_option("--scope", realm_scope, "trust scope")->required();

    // equiv
    auto* equiv = app.add_subcommand("equiv", "credential equivalence catalog");
    std::string equiv_mode, equiv_scope;
    equiv->add_option("--mode", equiv_mode, "v1 or v2")->required();
    equiv->add_option("--scope", equiv_scope, "restrict to one scope");

    // interop
    auto* interop = app.add_subcommand("interop", "data-space interoperability check");
    std::string interop_a, interop_b;
    interop->add_option("--a", interop_a, "first data space (ecoID)")->required();
    interop->add_option("--b", interop_b, "second data space (ecoID)")->required();

    // withdraw
    auto* withdraw = app.add_subcommand("withdraw", "withdraw one trust proposition");
    std::string wd_eco, wd_scope, wd_tsp, wd_credential;
    withdraw->add_option("--eco", wd_eco, "withdrawing ecosystem")->required();
    withdraw->add_option("--scope", wd_scope, "proposition scope")->required();
    withdraw->add_option("--tsp", wd_tsp, "proposition provider")->required();
    withdraw->add_option("--credential", wd_credential, "proposition credential")->required();

    // fragility
    auto* fragility_cmd =
        app.add_subcommand("fragility", "break a trust relation by withdrawing its witnesses");
    std::string fr_trustor, fr_trustee, fr_relation = "foreign", fr_scope, fr_c1, fr_c2;
    bool fr_commit = false, fr_dry_run = false;
    fragility_cmd->add_option("--trustor", fr_trustor)->required();
    fragility_cmd->add_option("--trustee", fr_trustee)->required();
    fragility_cmd->add_option("--relation", fr_relation, "foreign | mutual | equiv-v2");
    fragility_cmd->add_option("--scope", fr_scope, "scope (foreign, equiv-v2)");
    fragility_cmd->add_option("--c1", fr_c1, "first credential (equiv-v2)");
    fragility_cmd->add_option("--c2", fr_c2, "second credential (equiv-v2)");
    fragility_cmd->add_flag("--dry-run", fr_dry_run, "simulate only (default)");
    fragility_cmd->add_flag("--commit", fr_commit, "write the withdrawals to the store");

    // serve
    auto* serve = app.add_subcommand("serve", "run the registry HTTP service");
    int serve_port = 8080;
    std::string serve_host = "0.0.0.0";
    serve->add_option("--port", serve_port, "listen port");
    serve->add_option("--host", serve_host, "bind address");

    // global flags (--store, --human) may appear after the subcommand too
    for (auto* sub : {ingest, validate, list, show, trusts, realm, equiv, interop, withdraw,
                      fragility_cmd, serve}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kOk;
        }
        err << e.what() << '\n';
        return kUsageError;
    }
    if (!store_dir.empty()) settings.store_dir = store_dir;

    try {
        if (*ingest) {
            auto store = open_store(settings);
            nlohmann::json ingested = nlohmann::json::array();
            std::uint64_t sequence = 0;
            for (const auto& file : ingest_files) {
                const auto document = doc::parse_profile_document(read_input(file));
                const auto [view, replaced] = store.ingest(document);
                sequence = view.sequence();
                ingested.push_back(
                    {{"ecoID", document.eco_id}, {"replaced", replaced}});
            }
            emit(out, settings, {{"ingested", ingested}, {"sequence", sequence}});
            return kOk;
        }
        if (*validate) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(read_input(validate_file));
            } catch (const nlohmann::json::parse_error& e) {
                throw Error(ErrorCode::SyntaxError, e.what(), {{"position", e.byte}});
            }
            const auto report = doc::validate_document(j);
            emit(out, settings, codec::to_json(report));
            if (!report.ok()) {
                err << Error(ErrorCode::SchemaError, report.errors.front().message,
                             {{"field", report.errors.front().field}})
                           .to_json()
                           .dump(2)
                    << '\n';
                return kUsageError;
            }
            return kOk;
        }
        if (*show) {
            auto store = open_store(settings);
            const auto view = store.view();
            auto it = view.state->documents.find(show_id);
            if (it == view.state->documents.end()) {
                throw Error(ErrorCode::UnknownEcosystem, "unknown ecosystem: " + show_id,
                            {{"ecoID", show_id}});
            }
            const auto body = doc::to_canonical_json(it->second);
            emit(out, settings, body, {"scope", "tsp", "credential"},
                 proposition_rows(body.at("trustPropositions")));
            return kOk;
        }
        if (*list) {
            auto store = open_store(settings);
            const auto view = store.view();
            nlohmann::json ids = nlohmann::json::array();
            std::vector<std::vector<std::string>> rows;
            for (const auto& [eco_id, profile] : view.universe().profiles) {
                ids.push_back(eco_id);
                rows.push_back({eco_id, std::to_string(profile.propositions.size())});
            }
            emit(out, settings, {{"ecosystems", ids}, {"sequence", view.sequence()}},
                 {"ecoID", "propositions"}, rows);
            return kOk;
        }
        if (*trusts) {
            auto store = open_store(settings);
            const auto view = store.view();
            const auto& universe = view.universe();
            const auto result = relations::foreign_trust(
                universe.at(trusts_from), universe.at(trusts_to), ScopeId{trusts_scope});
            auto body = codec::to_json(result);
            body["trustor"] = trusts_from;
            body["trustee"] = trusts_to;
            body["scope"] = trusts_scope;
            emit(out, settings, body, {"scope", "tsp", "credential"},
                 proposition_rows(body.at("witnesses"), "proposition"));
            return (trusts_assert && !result.trusts) ? kDomainNegative : kOk;
        }
        if (*realm) {
            auto store = open_store(settings);
            const auto view = store.view();
            const auto members = relations::trust_realm(view.universe(), ScopeId{realm_scope});
            nlohmann::json ids = nlohmann::json::array();
            std::vector<std::vector<std::string>> rows;
            for (const auto& eco_id : members) {
                ids.push_back(eco_id);
                rows.push_back({eco_id});
            }
            emit(out, settings, {{"scope", realm_scope}, {"ecosystems", ids}}, {"ecoID"}, rows);
            return kOk;
        }
        if (*equiv) {
            if (equiv_mode != "v1" && equiv_mode != "v2") {
                err << "mode must be 'v1' or 'v2'\n";
                return kUsageError;
            }
            auto store = open_store(settings);
            const auto view = store.view();
            std::optional<ScopeId> scope;
            if (!equiv_scope.empty()) scope = ScopeId{equiv_scope};
            const auto report = equivalence::equivalence_report(
                view.universe(),
                equiv_mode == "v1" ? equivalence::EquivalenceMode::V1
                                   : equivalence::EquivalenceMode::V2,
                scope);
            const auto body = codec::to_json(report);
            std::vector<std::vector<std::string>> rows;
            for (const auto& row : report.catalog) {
                rows.push_back(
                    {row.scope.value, row.eco_id, row.provider.value, row.credential.value});
            }
            emit(out, settings, body, {"scope", "ecoID", "tsp", "credential"}, rows);
            return kOk;
        }
        if (*interop) {
            auto store = open_store(settings);
            const auto view = store.view();
            auto space_of = [&](const std::string& eco_id) {
                auto it = view.state->documents.find(eco_id);
                if (it == view.state->documents.end()) {
                    throw Error(ErrorCode::UnknownEcosystem, "unknown ecosystem: " + eco_id,
                                {{"ecoID", eco_id}});
                }
                auto space = doc::to_data_space(it->second);
                if (!space) {
                    throw Error(ErrorCode::MissingDataspaceExtension,
                                "profile has no data-space extension: " + eco_id,
                                {{"ecoID", eco_id}});
                }
                return *space;
            };
            const auto space_a = space_of(interop_a);
            const auto space_b = space_of(interop_b);
            auto body = codec::to_json(dataspace::interop_check(space_a, space_b));
            body["a"] = interop_a;
            body["b"] = interop_b;
            body["one_way"] = {
                {"a_to_b", codec::to_json(dataspace::one_way_cross_sharing(space_a, space_b))},
                {"b_to_a", codec::to_json(dataspace::one_way_cross_sharing(space_b, space_a))}};
            std::vector<std::vector<std::string>> rows;
            for (const auto& item : body.at("symmetric_difference")) {
                const auto& p = item.at("proposition");
                rows.push_back({item.at("only_in").get<std::string>(),
                                p.at("ecoTrustScope").get<std::string>(),
                                p.at("ecoTSP").get<std::string>(),
                                p.at("ecoCredentialType").get<std::string>()});
            }
            emit(out, settings, body, {"only_in", "scope", "tsp", "credential"}, rows);
            return kOk;
        }
        if (*withdraw) {
            auto store = open_store(settings);
            const TrustProposition proposition{
                ScopeId{wd_scope}, ProviderId{wd_tsp, std::nullopt}, CredentialId{wd_credential}};
            const auto before = store.view();
            const auto impact =
                fragility::withdrawal_impact(before.universe(), wd_eco, proposition);
            const auto after = store.apply_withdrawal(wd_eco, proposition);
            auto body = codec::to_json(impact);
            body["sequence"] = after.sequence();
            emit(out, settings, body);
            return kOk;
        }
        if (*fragility_cmd) {
            if (fr_commit && fr_dry_run) {
                err << "--commit and --dry-run are mutually exclusive\n";
                return kUsageError;
            }
            fragility::RelationSpec relation;
            if (fr_relation == "foreign") {
                if (fr_scope.empty()) {
                    err << "--scope is required for the foreign relation\n";
                    return kUsageError;
                }
                relation = fragility::RelationSpec::foreign_trust(ScopeId{fr_scope});
            } else if (fr_relation == "mutual") {
                relation = fragility::RelationSpec::direct_mutual();
            } else if (fr_relation == "equiv-v2") {
                if (fr_scope.empty() || fr_c1.empty() || fr_c2.empty()) {
                    err << "--scope, --c1 and --c2 are required for equiv-v2\n";
                    return kUsageError;
                }
                relation = fragility::RelationSpec::equiv_v2(ScopeId{fr_scope}, CredentialId{fr_c1},
                                                             CredentialId{fr_c2});
            } else {
                err << "unknown relation '" << fr_relation << "'\n";
                return kUsageError;
            }
            auto store = open_store(settings);
            const auto view = store.view();
            const auto trace =
                fragility::fragility_check(view.universe(), fr_trustor, fr_trustee, relation);
            if (fr_commit) {
                for (const auto& witness : trace.kappa.witnesses) {
                    store.apply_withdrawal(fr_trustee, witness);
                }
            }
            if (settings.human) {
                std::vector<std::vector<std::string>> rows;
                for (const auto& step : trace.steps) {
                    rows.push_back({step.action,
                                    step.proposition ? codec::to_json(*step.proposition).dump()
                                                     : "-",
                                    step.relation_holds ? "holds" : "broken"});
                }
                print_table(out, {"action", "proposition", "relation"}, rows);
            } else {
                out << trace.to_jsonl();
            }
            return kOk;
        }
        if (*serve) {
            auto store = open_store(settings);
            service::RegistryService svc(store);
            err << "listening on " << serve_host << ":" << serve_port << ", store "
                << store.dir().string() << '\n';
            if (!svc.listen(serve_host, serve_port)) {
                err << "cannot bind " << serve_host << ":" << serve_port << '\n';
                return kStoreError;
            }
            return kOk;
        }
    } catch (const Error& e) {
        err << e.to_json().dump(2) << '\n';
        switch (e.code()) {
            case ErrorCode::SyntaxError:
            case ErrorCode::SchemaError:
            case ErrorCode::BadRequest:
                return kUsageError;
            case ErrorCode::StorageError:
                return kStoreError;
            default:
                return kDomainNegative;
        }
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kStoreError;
    }
    err << "no command given\n";
    return kUsageError;
}

}  // namespace trustmesh::cli
