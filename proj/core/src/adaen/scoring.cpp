#include "aladaen/adaen/scoring.hpp"

#include "aladaen/adaen/losses.hpp"
#include "aladaen/errors.hpp"

namespace aladaen::adaen {

double anomaly_score(const AdaenModel& model, std::span<const double> record) {
    return combined_reconstruction(model, numerics::Tensor2D::row_vector(record)).front();
}

std::vector<double> anomaly_scores(const AdaenModel& model, const numerics::Tensor2D& rows) {
    return combined_reconstruction(model, rows);
}

std::vector<double> anomaly_scores(const AdaenModel& model, std::span<const std::size_t> rows,
                                   const data::BooleanDataset& dataset) {
    constexpr std::size_t kChunk = 1024;
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t begin = 0; begin < rows.size(); begin += kChunk) {
        const auto chunk = rows.subspan(begin, std::min(kChunk, rows.size() - begin));
        const auto scores = combined_reconstruction(model, dataset.to_tensor(chunk));
        out.insert(out.end(), scores.begin(), scores.end());
    }
    return out;
}

metrics::RankedList score_dataset(const AdaenModel& model, std::span<const std::size_t> rows,
                                  const data::BooleanDataset& dataset) {
    std::vector<std::string> ids;
    ids.reserve(rows.size());
    for (auto r : rows) {
        if (r >= dataset.rows()) throw IntegrityError("row " + std::to_string(r) + " is out of range");
        ids.push_back(dataset.id(r));
    }
    const auto scores = anomaly_scores(model, rows, dataset);
    return metrics::RankedList::from_scores(ids, scores);
}

}  // namespace aladaen::adaen
