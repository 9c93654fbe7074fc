#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace aladaen::numerics {

/// xoshiro256** seeded through splitmix64.
///
/// Every distribution here is implemented locally rather than through
/// <random> distributions, whose outputs differ between standard libraries.
/// The full generator state is exposed so runs can be snapshotted and resumed.
class Rng {
public:
    using State = std::array<std::uint64_t, 4>;

    explicit Rng(std::uint64_t seed = 0);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 bits of precision.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller (one output per call, no caching).
    double normal();
    bool bernoulli(double p) { return uniform() < p; }
    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// Independent generator for a named sub-stream; does not advance *this.
    [[nodiscard]] Rng fork(std::uint64_t stream) const;

    [[nodiscard]] State state() const { return state_; }
    void set_state(const State& s) { state_ = s; }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    State state_{};
};

}  // namespace aladaen::numerics
