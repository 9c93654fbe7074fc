#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aladaen/adaen/model.hpp"
#include "aladaen/data/dataset.hpp"
#include "aladaen/metrics/ranking.hpp"

namespace aladaen::adaen {

/// Combined reconstruction error of one record in eval mode.
[[nodiscard]] double anomaly_score(const AdaenModel& model, std::span<const double> record);
[[nodiscard]] std::vector<double> anomaly_scores(const AdaenModel& model, const numerics::Tensor2D& rows);
[[nodiscard]] std::vector<double> anomaly_scores(const AdaenModel& model, std::span<const std::size_t> rows,
                                                 const data::BooleanDataset& dataset);

/// 1 iff score > tau.
[[nodiscard]] inline int classify(double score, double tau) { return score > tau ? 1 : 0; }

[[nodiscard]] metrics::RankedList score_dataset(const AdaenModel& model, std::span<const std::size_t> rows,
                                                const data::BooleanDataset& dataset);

}  // namespace aladaen::adaen
