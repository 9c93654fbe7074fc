#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "aladaen/data/dataset.hpp"

namespace aladaen::data {

/// Planted-anomaly generator for imbalanced boolean process data.
struct SynthConfig {
    std::size_t n_records = 4000;
    std::size_t n_attributes = 64;
    double anomaly_rate = 0.005;
    /// Mean probability that an attribute fires on a normal record.
    double normal_density = 0.2;
    /// Rarest attributes forced on for every anomaly.
    std::size_t anomaly_flip_count = 4;
    std::uint64_t seed = 42;

    void validate() const;
};

/// Normal rows are independent Bernoulli draws over a per-attribute base-rate
/// profile drawn once per dataset (mean `normal_density`). Anomalous rows are
/// normal draws with the `anomaly_flip_count` lowest-rate attributes set to 1.
/// Exactly round(anomaly_rate * n_records) rows are anomalous.
std::pair<BooleanDataset, GroundTruth> generate_synthetic(const SynthConfig& config);

}  // namespace aladaen::data
