#include "aladaen/active/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aladaen/errors.hpp"

namespace aladaen::active {

double compute_threshold(std::span<const double> scores, double q) {
    if (scores.empty()) throw ArgumentError("cannot take a percentile of no scores");
    if (!(q > 0.0 && q <= 100.0)) throw ArgumentError("percentile must lie in (0, 100]");
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

std::vector<std::size_t> select_uncertain(std::span<const std::string> ids, std::span<const double> scores,
                                          double tau, std::size_t budget) {
    if (ids.size() != scores.size()) throw ShapeError("ids and scores differ in length");
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto take = std::min(budget, order.size());
    const auto closer = [&](std::size_t a, std::size_t b) {
        const double da = std::abs(scores[a] - tau);
        const double db = std::abs(scores[b] - tau);
        if (da != db) return da < db;
        return ids[a] < ids[b];
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), closer);
    order.resize(take);
    return order;
}

}  // namespace aladaen::active
