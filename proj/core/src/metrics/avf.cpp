#include "aladaen/metrics/avf.hpp"

#include "aladaen/errors.hpp"

namespace aladaen::metrics {

std::vector<double> avf_values(const data::BooleanDataset& dataset) {
    if (dataset.rows() == 0) throw ArgumentError("AVF of an empty dataset");
    const std::size_t n = dataset.rows();
    const std::size_t d = dataset.cols();
    std::vector<std::size_t> ones(d, 0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = dataset.row(r);
        for (std::size_t c = 0; c < d; ++c) ones[c] += row[c];
    }
    std::vector<double> out(n, 0.0);
    if (d == 0) return out;
    const auto total = static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = dataset.row(r);
        double sum = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            const std::size_t count = row[c] ? ones[c] : n - ones[c];
            sum += static_cast<double>(count) / total;
        }
        out[r] = sum / static_cast<double>(d);
    }
    return out;
}

RankedList avf_scores(const data::BooleanDataset& dataset) {
    auto values = avf_values(dataset);
    for (double& v : values) v = -v;
    return RankedList::from_scores(dataset.record_ids(), values);
}

}  // namespace aladaen::metrics
