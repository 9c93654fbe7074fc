#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aladaen/data/dataset.hpp"
#include "aladaen/data/splits.hpp"
#include "aladaen/gan/gan.hpp"
#include "aladaen/numerics/rng.hpp"

namespace aladaen::active {

struct IterationRecord {
    std::size_t iteration = 0;
    double tau = 0.0;
    double ndcg_pool = 0.0;  // ranking of the current unlabeled pool
    double ndcg_full = 0.0;  // ranking of the original unlabeled pool
    bool pool_degenerate = false;
    bool full_degenerate = false;
    std::vector<std::string> queried_ids;
    std::size_t n_labeled_normal = 0;     // confirmed normal this iteration
    std::size_t n_labeled_anomalous = 0;  // confirmed anomalous this iteration
    std::size_t n_synthetic = 0;          // synthetic rows added this iteration
    bool augmentation_skipped = false;
    std::size_t pool_size_before = 0;
    std::size_t pool_size_after = 0;
    std::size_t labeled_pool_size = 0;    // real + synthetic rows trained on this iteration
    std::size_t epochs_trained = 0;
    double wall_time = 0.0;               // seconds; excluded from determinism checks

    [[nodiscard]] nlohmann::json to_json() const;
    static IterationRecord from_json(const nlohmann::json& j);
};

/// Pool bookkeeping of a run. Rows index the dataset; every list is ascending.
struct ActiveLearningState {
    std::vector<std::size_t> labeled_normals;  // real rows of D_L
    gan::SyntheticRows synthetic;              // synthetic rows of D_L
    std::vector<std::size_t> unlabeled_pool;   // D_U
    std::vector<std::size_t> known_anomalies;  // oracle-confirmed, never trained on
    std::vector<std::size_t> validation;
    std::vector<std::size_t> evaluation_pool;  // D_U as it was before iteration 1
    std::size_t iteration = 0;                 // completed iterations
    std::optional<double> frozen_tau;
    std::vector<IterationRecord> history;
    std::uint64_t seed = 0;
    numerics::Rng::State rng_state{};
    bool finished = false;
    std::string stop_reason;

    [[nodiscard]] nlohmann::json to_json(const data::BooleanDataset& dataset) const;
    static ActiveLearningState from_json(const nlohmann::json& j, const data::BooleanDataset& dataset);
};

/// Fresh state for iteration 1 from cold-start splits.
[[nodiscard]] ActiveLearningState initial_state(const data::Splits& splits, std::uint64_t seed);

/// Throws IntegrityError when D_L, D_U and the anomaly ledger overlap.
void check_partition(const ActiveLearningState& state);

}  // namespace aladaen::active
