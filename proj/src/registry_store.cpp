#include "trustmesh/registry_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "trustmesh/json_codec.hpp"

namespace trustmesh::store {
namespace {

constexpr const char* kEventLogFile = "events.log";
constexpr const char* kSnapshotFile = "snapshot.json";

std::string now_utc_iso8601() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

[[noreturn]] void storage_error(const std::string& message) {
    throw Error(ErrorCode::StorageError, message);
}

}  // namespace

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::ProfileAsserted:
            return "ProfileAsserted";
        case EventKind::PropositionAsserted:
            return "PropositionAsserted";
        case EventKind::PropositionWithdrawn:
            return "PropositionWithdrawn";
        case EventKind::ProfileRemoved:
            return "ProfileRemoved";
    }
    return "ProfileAsserted";
}

namespace {

EventKind kind_from_string(const std::string& text) {
    if (text == "ProfileAsserted") return EventKind::ProfileAsserted;
    if (text == "PropositionAsserted") return EventKind::PropositionAsserted;
    if (text == "PropositionWithdrawn") return EventKind::PropositionWithdrawn;
    if (text == "ProfileRemoved") return EventKind::ProfileRemoved;
    storage_error("unknown event kind '" + text + "'");
}

}  // namespace

nlohmann::json EventLogRecord::to_json() const {
    return nlohmann::json{{"sequence", sequence},
                          {"kind", store::to_string(kind)},
                          {"payload", payload},
                          {"timestamp", timestamp}};
}

EventLogRecord EventLogRecord::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("sequence") || !j.contains("kind") ||
        !j.contains("payload") || !j.contains("timestamp")) {
        storage_error("malformed event log record");
    }
    EventLogRecord record;
    record.sequence = j["sequence"].get<std::uint64_t>();
    record.kind = kind_from_string(j["kind"].get<std::string>());
    record.payload = j["payload"];
    record.timestamp = j["timestamp"].get<std::string>();
    return record;
}

StoreState apply_event(const StoreState& state, const EventLogRecord& record) {
    StoreState next = state;
    next.sequence = record.sequence;
    switch (record.kind) {
        case EventKind::ProfileAsserted: {
            auto document = doc::document_from_json(record.payload);
            if (next.documents.count(document.eco_id)) {
                storage_error("ProfileAsserted for already-present ecosystem " + document.eco_id);
            }
            next.universe.profiles[document.eco_id] = doc::to_profile(document);
            next.documents[document.eco_id] = std::move(document);
            break;
        }
        case EventKind::ProfileRemoved: {
            const auto eco_id = record.payload.at("ecoID").get<std::string>();
            if (next.documents.erase(eco_id) == 0 || next.universe.profiles.erase(eco_id) == 0) {
                storage_error("ProfileRemoved for unknown ecosystem " + eco_id);
            }
            break;
        }
        case EventKind::PropositionWithdrawn: {
            const auto eco_id = record.payload.at("ecoID").get<std::string>();
            const auto proposition =
                codec::proposition_from_json(record.payload.at("proposition"), "proposition");
            auto it = next.documents.find(eco_id);
            if (it == next.documents.end()) {
                throw Error(ErrorCode::UnknownEcosystem, "unknown ecosystem: " + eco_id,
                            {{"ecoID", eco_id}});
            }
            auto& entries = it->second.trust_propositions;
            auto entry = std::find_if(entries.begin(), entries.end(), [&](const auto& e) {
                return e.proposition == proposition;
            });
            if (entry == entries.end()) {
                throw Error(ErrorCode::PropositionAbsent,
                            "proposition is not asserted by " + eco_id,
                            {{"ecoID", eco_id}, {"proposition", codec::to_json(proposition)}});
            }
            entries.erase(entry);
            if (it->second.dataspace) {
                auto& assertions = it->second.dataspace->assertions;
                assertions.erase(std::remove_if(assertions.begin(), assertions.end(),
                                                [&](const auto& a) {
                                                    return a.proposition == proposition;
                                                }),
                                 assertions.end());
            }
            next.universe.profiles.at(eco_id).propositions.erase(proposition);
            break;
        }
        case EventKind::PropositionAsserted: {
            const auto eco_id = record.payload.at("ecoID").get<std::string>();
            const auto proposition =
                codec::proposition_from_json(record.payload.at("proposition"), "proposition");
            auto it = next.documents.find(eco_id);
            if (it == next.documents.end()) {
                throw Error(ErrorCode::UnknownEcosystem, "unknown ecosystem: " + eco_id,
                            {{"ecoID", eco_id}});
            }
            auto& profile = next.universe.profiles.at(eco_id);
            if (profile.propositions.count(proposition)) {
                throw Error(ErrorCode::AlreadyAsserted,
                            "proposition is already asserted by " + eco_id,
                            {{"ecoID", eco_id}, {"proposition", codec::to_json(proposition)}});
            }
            it->second.trust_propositions.push_back({proposition, false, {}});
            profile.propositions.insert(proposition);
            break;
        }
    }
    return next;
}

RegistryStore::RegistryStore(std::filesystem::path dir, StoreOptions options)
    : dir_(std::move(dir)), options_(options), state_(std::make_shared<StoreState>()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) storage_error("cannot create store directory " + dir_.string() + ": " + ec.message());
    replay();
    const auto log_path = dir_ / kEventLogFile;
    log_fd_ = ::open(log_path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (log_fd_ < 0) storage_error("cannot open event log " + log_path.string());
    last_snapshot_sequence_ = state_->sequence;
}

RegistryStore::~RegistryStore() {
    if (log_fd_ >= 0) ::close(log_fd_);
}

void RegistryStore::replay() {
    auto state = std::make_shared<StoreState>();

    const auto snapshot_path = dir_ / kSnapshotFile;
    std::uint64_t snapshot_sequence = 0;
    if (std::filesystem::exists(snapshot_path)) {
        std::ifstream in(snapshot_path);
        nlohmann::json snapshot;
        try {
            in >> snapshot;
        } catch (const nlohmann::json::exception& e) {
            storage_error(std::string("corrupt snapshot file: ") + e.what());
        }
        snapshot_sequence = snapshot.at("sequence").get<std::uint64_t>();
        state->sequence = snapshot_sequence;
        for (const auto& item : snapshot.at("documents")) {
            auto document = doc::document_from_json(item);
            state->universe.profiles[document.eco_id] = doc::to_profile(document);
            state->documents[document.eco_id] = std::move(document);
        }
    }

    const auto log_path = dir_ / kEventLogFile;
    if (std::filesystem::exists(log_path)) {
        std::ifstream in(log_path);
        std::string line;
        std::uint64_t expected = 1;
        bool torn = false;
        while (std::getline(in, line)) {
            if (torn) storage_error("event log corrupt: record after unparseable line");
            if (line.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) {
                // A torn final line is a crash mid-append; anything else is corruption.
                torn = true;
                continue;
            }
            const auto record = EventLogRecord::from_json(j);
            if (record.sequence != expected) {
                storage_error("event log gap: expected sequence " + std::to_string(expected) +
                              ", found " + std::to_string(record.sequence));
            }
            ++expected;
            if (record.sequence <= snapshot_sequence) continue;
            *state = apply_event(*state, record);
        }
        if (expected <= snapshot_sequence && snapshot_sequence > 0) {
            storage_error("snapshot is ahead of the event log");
        }
    } else if (snapshot_sequence > 0) {
        storage_error("snapshot present but event log missing");
    }

    state_ = std::move(state);
}

RegistryStore::View RegistryStore::view() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return View{state_};
}

void RegistryStore::append_record(EventLogRecord& record) {
    const std::string line = record.to_json().dump() + "\n";
    if (::write(log_fd_, line.data(), line.size()) != static_cast<ssize_t>(line.size())) {
        storage_error("short write to event log");
    }
    if (::fsync(log_fd_) != 0) storage_error("fsync of event log failed");
}

void RegistryStore::write_snapshot_locked() {
    nlohmann::json documents = nlohmann::json::array();
    for (const auto& [eco_id, document] : state_->documents) {
        documents.push_back(doc::to_canonical_json(document));
    }
    nlohmann::json snapshot{{"sequence", state_->sequence}, {"documents", documents}};
    const auto tmp_path = dir_ / (std::string(kSnapshotFile) + ".tmp");
    {
        std::ofstream out(tmp_path);
        out << snapshot.dump(2) << '\n';
        if (!out) storage_error("cannot write snapshot");
    }
    std::filesystem::rename(tmp_path, dir_ / kSnapshotFile);
    last_snapshot_sequence_ = state_->sequence;
}

void RegistryStore::maybe_snapshot_locked() {
    if (options_.snapshot_interval == 0) return;
    if (state_->sequence - last_snapshot_sequence_ < options_.snapshot_interval) return;
    write_snapshot_locked();
}

void RegistryStore::write_snapshot() {
    std::lock_guard<std::mutex> lock(mutex_);
    write_snapshot_locked();
}

std::pair<RegistryStore::View, bool> RegistryStore::ingest(const doc::ProfileDocument& document) {
    std::lock_guard<std::mutex> lock(mutex_);
    // Apply everything to a scratch copy first: validation failures must not
    // leave durable records behind.
    auto next = *state_;
    const bool replaced = next.documents.count(document.eco_id) > 0;
    std::vector<EventLogRecord> records;
    if (replaced) {
        records.push_back({next.sequence + 1, EventKind::ProfileRemoved,
                           nlohmann::json{{"ecoID", document.eco_id}}, now_utc_iso8601()});
        next = apply_event(next, records.back());
    }
    records.push_back({next.sequence + 1, EventKind::ProfileAsserted,
                       doc::to_canonical_json(document), now_utc_iso8601()});
    next = apply_event(next, records.back());
    for (auto& record : records) append_record(record);
    state_ = std::make_shared<StoreState>(std::move(next));
    maybe_snapshot_locked();
    return {View{state_}, replaced};
}

RegistryStore::View RegistryStore::apply_single(EventKind kind, const std::string& eco_id,
                                                const TrustProposition& proposition) {
    std::lock_guard<std::mutex> lock(mutex_);
    EventLogRecord record{state_->sequence + 1, kind,
                          nlohmann::json{{"ecoID", eco_id},
                                         {"proposition", codec::to_json(proposition)}},
                          now_utc_iso8601()};
    auto next = apply_event(*state_, record);
    append_record(record);
    state_ = std::make_shared<StoreState>(std::move(next));
    maybe_snapshot_locked();
    return View{state_};
}

RegistryStore::View RegistryStore::apply_withdrawal(const std::string& eco_id,
                                                    const TrustProposition& proposition) {
    return apply_single(EventKind::PropositionWithdrawn, eco_id, proposition);
}

RegistryStore::View RegistryStore::apply_assertion(const std::string& eco_id,
                                                   const TrustProposition& proposition) {
    return apply_single(EventKind::PropositionAsserted, eco_id, proposition);
}

std::string RegistryStore::canonical_state_of(const StoreState& state) {
    nlohmann::json documents = nlohmann::json::array();
    for (const auto& [eco_id, document] : state.documents) {
        documents.push_back(doc::to_canonical_json(document));
    }
    return nlohmann::json{{"sequence", state.sequence}, {"documents", documents}}.dump();
}

std::string RegistryStore::canonical_state() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return canonical_state_of(*state_);
}

std::filesystem::path RegistryStore::resolve_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("TRUSTMESH_STORE_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "trustmesh-store";
}

}  // namespace trustmesh::store
