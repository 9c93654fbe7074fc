#include "aladaen/metrics/summary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "aladaen/errors.hpp"

namespace aladaen::metrics {
namespace {

double sorted_quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<double> sorted_copy(std::span<const double> values) {
    if (values.empty()) throw ArgumentError("summary statistic of an empty series");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

double quantile(std::span<const double> values, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("quantile level must lie in [0, 1]");
    return sorted_quantile(sorted_copy(values), p);
}

double mean(std::span<const double> values) {
    if (values.empty()) throw ArgumentError("mean of an empty series");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

FiveNumberSummary five_number_summary(std::span<const double> values) {
    const auto v = sorted_copy(values);
    return {v.front(), sorted_quantile(v, 0.25), sorted_quantile(v, 0.5), sorted_quantile(v, 0.75), v.back()};
}

}  // namespace aladaen::metrics
