#pragma once

// The meta-registry facade: HTTP/1.1 + JSON over the store. Reads are served
// from immutable snapshots and are side-effect free; every response carries
// the snapshot sequence it was computed from (X-Registry-Sequence header,
// plus a "sequence" field in constructed bodies). Error bodies are
// {code, message, details}.

#include <string>

#include "httplib.h"
#include "trustmesh/registry_store.hpp"

namespace trustmesh::service {

/// A TRQP-style recognition question: does this ecosystem accept this
/// provider for this scope (optionally: for this exact credential type)?
struct AuthorizationQuery {
    std::string ecosystem;
    ProviderId tsp;
    ScopeId scope;
    std::optional<CredentialId> credential;
};

bool authorized(const Universe& universe, const AuthorizationQuery& query);

class RegistryService {
public:
    explicit RegistryService(store::RegistryStore& store) : store_(store) {}

    /// Registers all routes on the server.
    void attach(httplib::Server& server);

    /// Blocking listen loop (used by the serve command).
    bool listen(const std::string& host, int port);

private:
    store::RegistryStore& store_;
};

}  // namespace trustmesh::service
