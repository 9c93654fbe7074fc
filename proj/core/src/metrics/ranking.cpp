#include "aladaen/metrics/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "aladaen/errors.hpp"

namespace aladaen::metrics {

RankedList RankedList::from_scores(std::span<const std::string> ids, std::span<const double> scores) {
    if (ids.size() != scores.size()) throw ShapeError("ranking ids and scores differ in length");
    RankedList list;
    list.entries_.reserve(ids.size());
    std::unordered_set<std::string_view> seen;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!seen.insert(ids[i]).second) throw ArgumentError("duplicate id '" + ids[i] + "' in ranking");
        list.entries_.push_back({ids[i], scores[i]});
    }
    std::sort(list.entries_.begin(), list.entries_.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    return list;
}

std::vector<std::string> RankedList::ids() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.id);
    return out;
}

nlohmann::json MetricsReport::to_json() const {
    return {{"ndcg", ndcg},         {"dcg", dcg},           {"idcg", idcg},
            {"n_anomalies", n_anomalies}, {"n_records", n_records}, {"degenerate", degenerate}};
}

double dcg(std::span<const int> relevances) {
    double total = 0.0;
    for (std::size_t i = 0; i < relevances.size(); ++i) {
        if (relevances[i] != 0) total += relevances[i] / std::log2(static_cast<double>(i) + 2.0);
    }
    return total;
}

double ideal_dcg(std::size_t k) {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) total += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    return total;
}

MetricsReport ndcg(std::span<const int> relevances) {
    MetricsReport report;
    report.n_records = relevances.size();
    for (int r : relevances) {
        if (r != 0 && r != 1) throw ArgumentError("relevances must be 0 or 1");
        report.n_anomalies += static_cast<std::size_t>(r);
    }
    report.dcg = dcg(relevances);
    report.idcg = ideal_dcg(report.n_anomalies);
    if (report.n_anomalies == 0) {
        report.degenerate = true;
        report.ndcg = 1.0;
    } else {
        report.ndcg = std::clamp(report.dcg / report.idcg, 0.0, 1.0);
    }
    return report;
}

MetricsReport ndcg(const RankedList& ranking, const data::GroundTruth& truth) {
    std::vector<int> relevances(ranking.size());
    std::size_t found = 0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        relevances[i] = truth.contains(ranking[i].id) ? 1 : 0;
        found += static_cast<std::size_t>(relevances[i]);
    }
    auto report = ndcg(relevances);
    report.truth_outside_ranking = truth.size() - found;
    return report;
}

double relative_improvement(double baseline, double max_al) {
    if (!(baseline > 0.0)) throw ArgumentError("relative improvement needs a positive baseline");
    return (max_al - baseline) / baseline * 100.0;
}

}  // namespace aladaen::metrics
