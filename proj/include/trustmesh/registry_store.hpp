#pragma once

// System of record: an append-only JSON-lines event log (fsynced per append)
// plus periodic snapshot files. The live universe is an immutable value
// swapped atomically under a single-writer lock; readers hold a consistent
// point-in-time view and never block the writer. Replaying the log from the
// beginning reconstructs the current state exactly.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "trustmesh/core_model.hpp"
#include "trustmesh/profile_document.hpp"

namespace trustmesh::store {

enum class EventKind {
    ProfileAsserted,
    PropositionAsserted,
    PropositionWithdrawn,
    ProfileRemoved,
};

const char* to_string(EventKind kind);

struct EventLogRecord {
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::ProfileAsserted;
    nlohmann::json payload;
    std::string timestamp;

    nlohmann::json to_json() const;
    static EventLogRecord from_json(const nlohmann::json& j);
};

/// Immutable point-in-time state: the stored documents, the universe derived
/// from them, and the sequence number of the last applied event.
struct StoreState {
    std::map<std::string, doc::ProfileDocument> documents;
    Universe universe;
    std::uint64_t sequence = 0;
};

struct StoreOptions {
    std::uint64_t snapshot_interval = 100;  // write a snapshot every N events
};

class RegistryStore {
public:
    using Options = StoreOptions;

    /// Opens (or creates) a store directory, loading the latest snapshot and
    /// replaying the event log tail. A torn final log line (crash mid-append)
    /// is discarded; any other malformed or out-of-sequence record is a
    /// StorageError.
    explicit RegistryStore(std::filesystem::path dir, StoreOptions options = StoreOptions());
    ~RegistryStore();

    RegistryStore(const RegistryStore&) = delete;
    RegistryStore& operator=(const RegistryStore&) = delete;

    struct View {
        std::shared_ptr<const StoreState> state;

        const Universe& universe() const { return state->universe; }
        std::uint64_t sequence() const { return state->sequence; }
    };

    View view() const;

    /// Publishes a document. An existing profile with the same ecoID is
    /// replaced wholesale (removal + assertion events). Returns the new view
    /// and whether an existing profile was replaced.
    std::pair<View, bool> ingest(const doc::ProfileDocument& document);

    /// Removes one proposition from one profile; assertions referencing it in
    /// that profile's data-space extension are dropped with it so the stored
    /// document always re-parses.
    View apply_withdrawal(const std::string& eco_id, const TrustProposition& proposition);

    /// Re-asserts a proposition previously absent from the profile.
    View apply_assertion(const std::string& eco_id, const TrustProposition& proposition);

    void write_snapshot();

    /// Canonical serialization of the current state; two stores with equal
    /// histories produce byte-identical output.
    std::string canonical_state() const;

    const std::filesystem::path& dir() const { return dir_; }

    /// --store flag, TRUSTMESH_STORE_DIR env var, or ./trustmesh-store.
    static std::filesystem::path resolve_dir(const std::optional<std::string>& flag);

    static std::string canonical_state_of(const StoreState& state);

private:
    void append_record(EventLogRecord& record);  // writes one line, fsyncs
    View apply_single(EventKind kind, const std::string& eco_id,
                      const TrustProposition& proposition);
    void replay();
    void write_snapshot_locked();
    void maybe_snapshot_locked();

    std::filesystem::path dir_;
    Options options_;
    mutable std::mutex mutex_;
    std::shared_ptr<const StoreState> state_;
    int log_fd_ = -1;
    std::uint64_t last_snapshot_sequence_ = 0;
};

/// Pure state transitions, shared by the write path and replay.
StoreState apply_event(const StoreState& state, const EventLogRecord& record);

}  // namespace trustmesh::store
