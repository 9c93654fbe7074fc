#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aladaen::active {

/// Nearest-rank percentile: the ceil(q / 100 * N)-th smallest score (1-based).
/// Throws ArgumentError on empty input or q outside (0, 100].
[[nodiscard]] double compute_threshold(std::span<const double> scores, double q);

/// Positions of the min(Q, N) records with the smallest |score - tau|, ordered
/// by increasing distance with ties broken by ascending id.
[[nodiscard]] std::vector<std::size_t> select_uncertain(std::span<const std::string> ids,
                                                        std::span<const double> scores, double tau,
                                                        std::size_t budget);

}  // namespace aladaen::active
