#pragma once

#include <vector>

#include "aladaen/data/dataset.hpp"
#include "aladaen/metrics/ranking.hpp"

namespace aladaen::metrics {

/// Attribute Value Frequency per record: the mean over attributes of the
/// relative frequency of the record's own value (0 or 1) in that column.
[[nodiscard]] std::vector<double> avf_values(const data::BooleanDataset& dataset);

/// Ranking with score = -AVF, so the rarest records come first.
[[nodiscard]] RankedList avf_scores(const data::BooleanDataset& dataset);

}  // namespace aladaen::metrics
