#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace trustmesh {

enum class ErrorCode {
    SyntaxError,
    SchemaError,
    UnknownEcosystem,
    UnknownParticipant,
    PropositionAbsent,
    AlreadyAsserted,
    NotShared,
    PartitionViolated,
    EmptyScope,
    EmptyUniverse,
    RelationDoesNotHold,
    InconsistentFramework,
    MissingDataspaceExtension,
    IdMismatch,
    BadRequest,
    StorageError,
};

const char* to_string(ErrorCode code);

/// Domain failure carrying a machine-readable code plus structured details
/// (e.g. the violating credentials for PartitionViolated).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, nlohmann::json details = nlohmann::json::object())
        : std::runtime_error(std::move(message)), code_(code), details_(std::move(details)) {}

    ErrorCode code() const { return code_; }
    const nlohmann::json& details() const { return details_; }

    nlohmann::json to_json() const {
        return nlohmann::json{{"code", to_string(code_)}, {"message", what()}, {"details", details_}};
    }

private:
    ErrorCode code_;
    nlohmann::json details_;
};

}  // namespace trustmesh
