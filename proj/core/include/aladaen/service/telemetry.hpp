#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aladaen/active/loop.hpp"

namespace aladaen::service {

inline constexpr int kTelemetrySchemaVersion = 1;

struct RankingRow {
    std::size_t rank = 0;
    std::string id;
    double score = 0.0;
    bool is_known_anomaly = false;
};

using Ranking = std::vector<RankingRow>;

/// Immutable view of a run handed to request threads.
struct TelemetrySnapshot {
    nlohmann::json state;  // carries schema_version and checksum
    std::vector<std::shared_ptr<const Ranking>> rankings;  // index k - 1 holds iteration k
};

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

/// Adds "checksum": hex FNV-1a of the document dumped without that key.
void stamp_checksum(nlohmann::json& doc);
[[nodiscard]] bool verify_checksum(const nlohmann::json& doc);

/// Publishes a fresh snapshot after every iteration; readers never block the loop
/// for longer than a pointer swap.
class TelemetryStore final : public active::IterationObserver {
public:
    /// Announces a run (iteration 0 before any ranking exists).
    void begin_run(const active::ActiveLearningState& state, const data::BooleanDataset& dataset);
    void on_iteration(const active::IterationContext& ctx) override;
    /// Updates the status field ("running", "awaiting_labels", "finished", "suspended").
    void set_status(const std::string& status);

    /// Null until begin_run.
    [[nodiscard]] std::shared_ptr<const TelemetrySnapshot> snapshot() const;

private:
    void publish(nlohmann::json state, std::vector<std::shared_ptr<const Ranking>> rankings);

    mutable std::mutex mutex_;
    std::shared_ptr<const TelemetrySnapshot> current_;
};

}  // namespace aladaen::service
