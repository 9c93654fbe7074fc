#pragma once

#include <span>

namespace aladaen::metrics {

struct FiveNumberSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Linear-interpolation quantile (position p * (n - 1) in the sorted sample).
[[nodiscard]] double quantile(std::span<const double> values, double p);
[[nodiscard]] double mean(std::span<const double> values);
[[nodiscard]] double median(std::span<const double> values);
[[nodiscard]] FiveNumberSummary five_number_summary(std::span<const double> values);

}  // namespace aladaen::metrics
