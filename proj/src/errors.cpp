#include "trustmesh/errors.hpp"

namespace trustmesh {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError:
            return "SyntaxError";
        case ErrorCode::SchemaError:
            return "SchemaError";
        case ErrorCode::UnknownEcosystem:
            return "UnknownEcosystem";
        case ErrorCode::UnknownParticipant:
            return "UnknownParticipant";
        case ErrorCode::PropositionAbsent:
            return "PropositionAbsent";
        case ErrorCode::AlreadyAsserted:
            return "AlreadyAsserted";
        case ErrorCode::NotShared:
            return "NotShared";
        case ErrorCode::PartitionViolated:
            return "PartitionViolated";
        case ErrorCode::EmptyScope:
            return "EmptyScope";
        case ErrorCode::EmptyUniverse:
            return "EmptyUniverse";
        case ErrorCode::RelationDoesNotHold:
            return "RelationDoesNotHold";
        case ErrorCode::InconsistentFramework:
            return "InconsistentFramework";
        case ErrorCode::MissingDataspaceExtension:
            return "MissingDataspaceExtension";
        case ErrorCode::IdMismatch:
            return "IdMismatch";
        case ErrorCode::BadRequest:
            return "BadRequest";
        case ErrorCode::StorageError:
            return "StorageError";
    }
    return "UnknownError";
}

}  // namespace trustmesh
