#include "aladaen/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aladaen/errors.hpp"
#include "aladaen/numerics/rng.hpp"

namespace aladaen::data {
namespace {

std::string padded(const char* prefix, std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

std::size_t digits_for(std::size_t n) { return std::to_string(n == 0 ? 0 : n - 1).size(); }

}  // namespace

void SynthConfig::validate() const {
    if (n_records == 0 || n_attributes == 0) throw ArgumentError("synthetic dataset needs records and attributes");
    if (!(anomaly_rate > 0.0 && anomaly_rate < 0.5)) throw ArgumentError("anomaly rate must lie in (0, 0.5)");
    if (!(normal_density > 0.0 && normal_density < 1.0)) throw ArgumentError("normal density must lie in (0, 1)");
    if (anomaly_flip_count > n_attributes) throw ArgumentError("anomaly flip count exceeds attribute count");
}

std::pair<BooleanDataset, GroundTruth> generate_synthetic(const SynthConfig& config) {
    config.validate();
    numerics::Rng rng(config.seed);
    const std::size_t n = config.n_records;
    const std::size_t d = config.n_attributes;

    // Base rates spread over [0.25, 1.75] x density so a few attributes are rare.
    std::vector<double> base_rate(d);
    for (auto& p : base_rate) p = std::clamp(config.normal_density * rng.uniform(0.25, 1.75), 1e-3, 0.95);

    std::vector<std::size_t> by_rarity(d);
    std::iota(by_rarity.begin(), by_rarity.end(), std::size_t{0});
    std::stable_sort(by_rarity.begin(), by_rarity.end(),
                     [&](std::size_t a, std::size_t b) { return base_rate[a] < base_rate[b]; });
    const std::vector<std::size_t> rare(by_rarity.begin(),
                                        by_rarity.begin() + static_cast<std::ptrdiff_t>(config.anomaly_flip_count));

    const auto n_anomalies = static_cast<std::size_t>(std::llround(config.anomaly_rate * static_cast<double>(n)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<bool> anomalous(n, false);
    for (std::size_t i = 0; i < n_anomalies; ++i) anomalous[order[i]] = true;

    std::vector<std::string> ids(n);
    std::vector<std::uint8_t> cells(n * d);
    GroundTruth truth;
    const std::size_t id_width = digits_for(n);
    for (std::size_t r = 0; r < n; ++r) {
        ids[r] = padded("p", r, id_width);
        for (std::size_t c = 0; c < d; ++c) cells[r * d + c] = rng.bernoulli(base_rate[c]) ? 1 : 0;
        if (anomalous[r]) {
            for (auto c : rare) cells[r * d + c] = 1;
            truth.anomalous_ids.insert(ids[r]);
        }
    }

    std::vector<std::string> attributes(d);
    const std::size_t attr_width = digits_for(d);
    for (std::size_t c = 0; c < d; ++c) attributes[c] = padded("attr", c, attr_width);

    return {BooleanDataset(std::move(ids), std::move(attributes), std::move(cells), ViewTag::SYNTH),
            std::move(truth)};
}

}  // namespace aladaen::data
