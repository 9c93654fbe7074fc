#include "aladaen/active/smoothing.hpp"

#include <cmath>

#include "aladaen/errors.hpp"

namespace aladaen::active {

std::vector<double> gaussian_smooth(std::span<const double> series, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ArgumentError("smoothing sigma must be positive");
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    for (std::ptrdiff_t o = -radius; o <= radius; ++o) {
        const auto x = static_cast<double>(o);
        taps[static_cast<std::size_t>(o + radius)] = std::exp(-x * x / (2.0 * sigma * sigma));
    }

    const auto n = static_cast<std::ptrdiff_t>(series.size());
    std::vector<double> out(series.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        double norm = 0.0;
        for (std::ptrdiff_t o = -radius; o <= radius; ++o) {
            const auto j = i + o;
            if (j < 0 || j >= n) continue;
            const double w = taps[static_cast<std::size_t>(o + radius)];
            acc += w * series[static_cast<std::size_t>(j)];
            norm += w;
        }
        out[static_cast<std::size_t>(i)] = acc / norm;
    }
    return out;
}

}  // namespace aladaen::active
