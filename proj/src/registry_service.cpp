#include "trustmesh/registry_service.hpp"

#include <functional>

#include "trustmesh/equivalence.hpp"
#include "trustmesh/fragility.hpp"
#include "trustmesh/json_codec.hpp"
#include "trustmesh/relations.hpp"

namespace trustmesh::service {
namespace {

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError:
        case ErrorCode::SchemaError:
        case ErrorCode::BadRequest:
            return 400;
        case ErrorCode::UnknownEcosystem:
        case ErrorCode::UnknownParticipant:
            return 404;
        case ErrorCode::MissingDataspaceExtension:
            return 422;
        case ErrorCode::StorageError:
            return 500;
        default:
            return 409;
    }
}

void reply_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

std::string required_param(const httplib::Request& req, const std::string& name) {
    if (!req.has_param(name)) {
        throw Error(ErrorCode::BadRequest, "missing query parameter '" + name + "'",
                    {{"param", name}});
    }
    return req.get_param_value(name);
}

const doc::ProfileDocument& document_or_throw(const store::StoreState& state,
                                              const std::string& eco_id) {
    auto it = state.documents.find(eco_id);
    if (it == state.documents.end()) {
        throw Error(ErrorCode::UnknownEcosystem, "unknown ecosystem: " + eco_id,
                    {{"ecoID", eco_id}});
    }
    return it->second;
}

dataspace::DataSpace data_space_or_throw(const store::StoreState& state,
                                         const std::string& eco_id) {
    auto space = doc::to_data_space(document_or_throw(state, eco_id));
    if (!space) {
        throw Error(ErrorCode::MissingDataspaceExtension,
                    "profile has no data-space extension: " + eco_id, {{"ecoID", eco_id}});
    }
    return *space;
}

}  // namespace

bool authorized(const Universe& universe, const AuthorizationQuery& query) {
    const auto& profile = universe.at(query.ecosystem);
    for (const auto& t : profile.propositions) {
        if (t.scope != query.scope || !(t.provider == query.tsp)) continue;
        if (!query.credential || t.credential == *query.credential) return true;
    }
    return false;
}

void RegistryService::attach(httplib::Server& server) {
    // Domain errors become structured bodies, never stack traces, and every
    // response (errors included) carries the snapshot sequence header.
    auto guarded = [this](Handler handler) {
        return [this, handler = std::move(handler)](const httplib::Request& req,
                                                    httplib::Response& res) {
            try {
                handler(req, res);
            } catch (const Error& e) {
                reply_json(res, e.to_json(), status_for(e.code()));
            } catch (const std::exception& e) {
                reply_json(res,
                           nlohmann::json{{"code", "InternalError"},
                                          {"message", e.what()},
                                          {"details", nlohmann::json::object()}},
                           500);
            }
            if (!res.has_header("X-Registry-Sequence")) {
                res.set_header("X-Registry-Sequence", std::to_string(store_.view().sequence()));
            }
        };
    };

    auto with_view = [this, &guarded](std::function<void(const httplib::Request&,
                                                         httplib::Response&,
                                                         const store::RegistryStore::View&)>
                                          handler) {
        return guarded([this, handler = std::move(handler)](const httplib::Request& req,
                                                            httplib::Response& res) {
            const auto view = store_.view();
            res.set_header("X-Registry-Sequence", std::to_string(view.sequence()));
            handler(req, res, view);
        });
    };

    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        reply_json(res, nlohmann::json{{"status", "ok"}});
    });

    server.Get("/v1/ecosystems",
               with_view([](const auto&, auto& res, const auto& view) {
                   nlohmann::json ids = nlohmann::json::array();
                   for (const auto& [eco_id, profile] : view.universe().profiles) {
                       ids.push_back(eco_id);
                   }
                   reply_json(res, {{"sequence", view.sequence()}, {"ecosystems", ids}});
               }));

    server.Get(R"(/v1/ecosystems/([^/]+))",
               with_view([](const auto& req, auto& res, const auto& view) {
                   const auto& document = document_or_throw(*view.state, req.matches[1]);
                   reply_json(res, doc::to_canonical_json(document));
               }));

    server.Put(R"(/v1/ecosystems/([^/]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const std::string eco_id = req.matches[1];
                   auto document = doc::parse_profile_document(req.body);
                   if (document.eco_id != eco_id) {
                       throw Error(ErrorCode::IdMismatch,
                                   "body ecoID does not match the path",
                                   {{"path", eco_id}, {"body", document.eco_id}});
                   }
                   const auto [view, replaced] = store_.ingest(document);
                   res.set_header("X-Registry-Sequence", std::to_string(view.sequence()));
                   reply_json(res,
                              {{"sequence", view.sequence()},
                               {"ecoID", eco_id},
                               {"replaced", replaced}},
                              replaced ? 200 : 201);
               }));

    server.Post(R"(/v1/ecosystems/([^/]+)/withdrawals)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                    const std::string eco_id = req.matches[1];
                    nlohmann::json body;
                    try {
                        body = nlohmann::json::parse(req.body);
                    } catch (const nlohmann::json::parse_error& e) {
                        throw Error(ErrorCode::SyntaxError, e.what(), {{"position", e.byte}});
                    }
                    const auto proposition = codec::proposition_from_json(body, "proposition");
                    const auto before = store_.view();
                    // Computed first: the impact describes the transition this
                    // event causes, and it also validates the precondition.
                    const auto impact =
                        fragility::withdrawal_impact(before.universe(), eco_id, proposition);
                    const auto after = store_.apply_withdrawal(eco_id, proposition);
                    res.set_header("X-Registry-Sequence", std::to_string(after.sequence()));
                    reply_json(res, {{"sequence", after.sequence()},
                                     {"impact", codec::to_json(impact)}});
                }));

    server.Get("/v1/trust",
               with_view([](const auto& req, auto& res, const auto& view) {
                   const auto trustor = required_param(req, "trustor");
                   const auto trustee = required_param(req, "trustee");
                   const ScopeId scope{required_param(req, "scope")};
                   const auto& universe = view.universe();
                   const auto result =
                       relations::foreign_trust(universe.at(trustor), universe.at(trustee), scope);
                   auto body = codec::to_json(result);
                   body["sequence"] = view.sequence();
                   body["trustor"] = trustor;
                   body["trustee"] = trustee;
                   body["scope"] = scope.value;
                   reply_json(res, body);
               }));

    server.Get("/v1/realm",
               with_view([](const auto& req, auto& res, const auto& view) {
                   const ScopeId scope{required_param(req, "scope")};
                   const auto realm = relations::trust_realm(view.universe(), scope);
                   nlohmann::json ids = nlohmann::json::array();
                   for (const auto& eco_id : realm) ids.push_back(eco_id);
                   reply_json(res, {{"sequence", view.sequence()},
                                    {"scope", scope.value},
                                    {"ecosystems", ids}});
               }));

    server.Get("/v1/equivalence",
               with_view([](const auto& req, auto& res, const auto& view) {
                   const auto mode_text = required_param(req, "mode");
                   equivalence::EquivalenceMode mode;
                   if (mode_text == "v1") {
                       mode = equivalence::EquivalenceMode::V1;
                   } else if (mode_text == "v2") {
                       mode = equivalence::EquivalenceMode::V2;
                   } else {
                       throw Error(ErrorCode::BadRequest, "mode must be 'v1' or 'v2'",
                                   {{"mode", mode_text}});
                   }
                   std::optional<ScopeId> scope;
                   if (req.has_param("scope")) scope = ScopeId{req.get_param_value("scope")};
                   const auto report = equivalence::equivalence_report(view.universe(), mode, scope);
                   auto body = codec::to_json(report);
                   body["sequence"] = view.sequence();
                   reply_json(res, body);
               }));

    server.Get("/v1/interop",
               with_view([](const auto& req, auto& res, const auto& view) {
                   const auto a = required_param(req, "a");
                   const auto b = required_param(req, "b");
                   const auto space_a = data_space_or_throw(*view.state, a);
                   const auto space_b = data_space_or_throw(*view.state, b);
                   const auto interop = dataspace::interop_check(space_a, space_b);
                   auto body = codec::to_json(interop);
                   body["sequence"] = view.sequence();
                   body["a"] = a;
                   body["b"] = b;
                   body["one_way"] = {
                       {"a_to_b", codec::to_json(dataspace::one_way_cross_sharing(space_a, space_b))},
                       {"b_to_a", codec::to_json(dataspace::one_way_cross_sharing(space_b, space_a))}};
                   reply_json(res, body);
               }));

    server.Get("/v1/trqp/authorization",
               with_view([](const auto& req, auto& res, const auto& view) {
                   AuthorizationQuery query;
                   query.ecosystem = required_param(req, "ecosystem");
                   query.tsp = ProviderId{required_param(req, "tsp"), std::nullopt};
                   query.scope = ScopeId{required_param(req, "scope")};
                   if (req.has_param("credential")) {
                       query.credential = CredentialId{req.get_param_value("credential")};
                   }
                   reply_json(res, {{"sequence", view.sequence()},
                                    {"authorized", authorized(view.universe(), query)}});
               }));
}

bool RegistryService::listen(const std::string& host, int port) {
    httplib::Server server;
    attach(server);
    return server.listen(host, port);
}

}  // namespace trustmesh::service
