#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aladaen/data/dataset.hpp"

namespace aladaen::data {

/// Row-index partitions; each list ascending.
struct Splits {
    std::vector<std::size_t> labeled_normal;  // cold-start D_L
    std::vector<std::size_t> unlabeled_pool;  // D_U: every remaining record
    std::vector<std::size_t> validation;      // normals held out for early stopping
};

/// Draws ceil(cold_start_fraction * |normals|) labeled normals and
/// ceil(validation_fraction * |normals|) validation normals; the rest, including
/// all anomalies, form the unlabeled pool.
Splits make_splits(const BooleanDataset& dataset, const GroundTruth& truth,
                   double cold_start_fraction = 0.2, double validation_fraction = 0.1,
                   std::uint64_t seed = 42);

}  // namespace aladaen::data
