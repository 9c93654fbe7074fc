#pragma once

#include <span>
#include <vector>

namespace aladaen::active {

/// Discrete Gaussian filter truncated at radius ceil(3 sigma). Taps falling
/// outside the series are dropped and the remaining weights renormalized.
[[nodiscard]] std::vector<double> gaussian_smooth(std::span<const double> series, double sigma = 2.0);

}  // namespace aladaen::active
