#include "aladaen/data/splits.hpp"

#include <algorithm>
#include <cmath>

#include "aladaen/errors.hpp"
#include "aladaen/numerics/rng.hpp"

namespace aladaen::data {

Splits make_splits(const BooleanDataset& dataset, const GroundTruth& truth, double cold_start_fraction,
                   double validation_fraction, std::uint64_t seed) {
    if (!(cold_start_fraction > 0.0 && cold_start_fraction < 1.0) ||
        !(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw ArgumentError("split fractions must lie in (0, 1)");
    }
    if (cold_start_fraction + validation_fraction >= 1.0) {
        throw ArgumentError("cold-start and validation fractions together cover every normal record");
    }
    validate_ground_truth(truth, dataset);

    auto normals = normal_rows(dataset, truth);
    const auto n = static_cast<double>(normals.size());
    const auto n_labeled = static_cast<std::size_t>(std::ceil(cold_start_fraction * n));
    const auto n_validation = static_cast<std::size_t>(std::ceil(validation_fraction * n));
    if (n_labeled < 2 || n_labeled + n_validation > normals.size()) {
        throw ArgumentError("too few normal records (" + std::to_string(normals.size()) +
                            ") for the requested splits");
    }

    numerics::Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(normals));

    Splits s;
    s.labeled_normal.assign(normals.begin(), normals.begin() + static_cast<std::ptrdiff_t>(n_labeled));
    s.validation.assign(normals.begin() + static_cast<std::ptrdiff_t>(n_labeled),
                        normals.begin() + static_cast<std::ptrdiff_t>(n_labeled + n_validation));
    std::sort(s.labeled_normal.begin(), s.labeled_normal.end());
    std::sort(s.validation.begin(), s.validation.end());

    std::vector<bool> taken(dataset.rows(), false);
    for (auto r : s.labeled_normal) taken[r] = true;
    for (auto r : s.validation) taken[r] = true;
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
        if (!taken[r]) s.unlabeled_pool.push_back(r);
    }
    return s;
}

}  // namespace aladaen::data
