#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aladaen/data/dataset.hpp"

namespace aladaen::metrics {

struct RankedEntry {
    std::string id;
    double score = 0.0;

    friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Records in descending score order, ties broken by ascending id.
class RankedList {
public:
    RankedList() = default;
    /// Throws ShapeError when the spans differ in length and ArgumentError on
    /// duplicate ids.
    static RankedList from_scores(std::span<const std::string> ids, std::span<const double> scores);

    [[nodiscard]] const std::vector<RankedEntry>& entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] const RankedEntry& operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] std::vector<std::string> ids() const;

    friend bool operator==(const RankedList&, const RankedList&) = default;

private:
    std::vector<RankedEntry> entries_;
};

struct MetricsReport {
    double ndcg = 1.0;
    double dcg = 0.0;
    double idcg = 0.0;
    std::size_t n_anomalies = 0;  // anomalies present in the ranking
    std::size_t n_records = 0;
    bool degenerate = false;      // no anomaly in the ranking; ndcg reported as 1
    std::size_t truth_outside_ranking = 0;

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Sum of rel_i / log2(i + 1) over 1-based positions i.
[[nodiscard]] double dcg(std::span<const int> relevances);
/// DCG of k relevant items placed first.
[[nodiscard]] double ideal_dcg(std::size_t k);

[[nodiscard]] MetricsReport ndcg(const RankedList& ranking, const data::GroundTruth& truth);
[[nodiscard]] MetricsReport ndcg(std::span<const int> relevances);

/// (max_al - baseline) / baseline * 100. Throws ArgumentError unless baseline > 0.
[[nodiscard]] double relative_improvement(double baseline, double max_al);

}  // namespace aladaen::metrics
