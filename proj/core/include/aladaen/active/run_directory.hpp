#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "aladaen/active/loop.hpp"

namespace aladaen::active {

/// On-disk layout of a run:
///   state.json           resumable snapshot of the latest completed iteration
///   history.jsonl        one IterationRecord per line
///   ranking_iter<k>.csv  id,score,rank over the original unlabeled pool
///   model_iter<k>.json   checkpoint after iteration k
///   model.json           latest checkpoint
class RunDirectory final : public IterationObserver {
public:
    explicit RunDirectory(std::filesystem::path root);

    [[nodiscard]] const std::filesystem::path& root() const { return root_; }
    [[nodiscard]] std::filesystem::path state_path() const { return root_ / "state.json"; }
    [[nodiscard]] std::filesystem::path history_path() const { return root_ / "history.jsonl"; }
    [[nodiscard]] std::filesystem::path latest_model_path() const { return root_ / "model.json"; }
    [[nodiscard]] std::filesystem::path ranking_path(std::size_t iteration) const;
    [[nodiscard]] std::filesystem::path checkpoint_path(std::size_t iteration) const;

    void write_state(const ActiveLearningState& state, const data::BooleanDataset& dataset) const;
    void write_history(const ActiveLearningState& state) const;
    void write_json(const std::string& name, const nlohmann::json& j) const;
    [[nodiscard]] nlohmann::json read_json(const std::string& name) const;

    void on_iteration(const IterationContext& ctx) override;

    [[nodiscard]] bool has_snapshot() const;
    /// State plus, after at least one iteration, the latest model.
    [[nodiscard]] std::pair<ActiveLearningState, std::optional<adaen::AdaenModel>> load(
        const data::BooleanDataset& dataset) const;

private:
    std::filesystem::path root_;
};

/// Writes a ranking as "id,score,rank" with round-trip score precision.
void write_ranking_csv(const std::filesystem::path& path, const metrics::RankedList& ranking);

/// json.dump() of an object with the named keys removed; used to compare
/// records while ignoring timing fields.
[[nodiscard]] std::string dump_without(nlohmann::json j, std::initializer_list<const char*> keys);

}  // namespace aladaen::active
