#pragma once

#include <cstddef>

#include <nlohmann/json.hpp>

#include "aladaen/gan/gan.hpp"

namespace aladaen::active {

struct ALConfig {
    std::size_t n_iterations = 40;
    std::size_t query_budget = 32;  // Q, queries per iteration
    double percentile = 80.0;       // q, threshold percentile
    bool recalibrate_threshold = true;
    /// Epoch cap for warm-start retraining from iteration 2 on; 0 freezes the model.
    std::size_t retrain_epochs = 100;
    gan::GanConfig gan;
    /// Synthetic rows per oracle-confirmed normal.
    double augmentation_ratio = 1.0;
    /// Fewer confirmed normals than this skips augmentation for the iteration.
    std::size_t min_augmentation_pool = 4;
    /// Stop once the pool ranking reaches nDCG 1 (non-degenerate pools only).
    bool stop_on_perfect = true;

    void validate() const;
    [[nodiscard]] nlohmann::json to_json() const;
    static ALConfig from_json(const nlohmann::json& j);
};

}  // namespace aladaen::active
