#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aladaen/numerics/network.hpp"

namespace aladaen::gan {

struct GanConfig {
    std::size_t steps = 500;
    std::size_t max_batch = 64;  // per-step batch is min(max_batch, pool size)
    std::size_t noise_dim = 32;
    double learning_rate = 1e-3;
    double beta1 = 0.5;
    double beta2 = 0.999;
    double leaky_slope = 0.2;
    double binarize_threshold = 0.5;

    void validate() const;
};

/// Generator n_z -> d/2 -> d/2 -> d (sigmoid) and discriminator d -> d/2 -> d/4 -> 1.
class GanModel {
public:
    numerics::Mlp generator;
    numerics::Mlp discriminator;

    GanModel() = default;
    GanModel(std::size_t data_dim, const GanConfig& config, numerics::Rng& init);

    [[nodiscard]] std::size_t data_dim() const { return data_dim_; }
    [[nodiscard]] std::size_t noise_dim() const { return noise_dim_; }

    /// Standard-normal noise batch.
    [[nodiscard]] numerics::Tensor2D sample_noise(std::size_t count, numerics::Rng& rng) const;
    /// Generator probabilities for a noise batch.
    [[nodiscard]] numerics::Tensor2D generate(const numerics::Tensor2D& noise) const;

private:
    std::size_t data_dim_ = 0;
    std::size_t noise_dim_ = 0;
};

/// -mean log D(x) - mean log(1 - D(G(z))). accumulate=true adds the
/// discriminator gradient; the generator is left untouched.
double gan_discriminator_loss(GanModel& gan, const numerics::Tensor2D& real, const numerics::Tensor2D& noise,
                              bool accumulate = false);
/// Non-saturating -mean log D(G(z)). accumulate=true adds the generator
/// gradient; the discriminator buffers are left untouched.
double gan_generator_loss(GanModel& gan, const numerics::Tensor2D& noise, bool accumulate = false);

struct GanTrainLog {
    std::vector<double> discriminator_loss;
    std::vector<double> generator_loss;
};

/// Alternating discriminator / generator Adam steps on rows of a {0,1} pool.
/// Throws ArgumentError on an empty pool.
GanModel train_gan(const numerics::Tensor2D& pool, const GanConfig& config, numerics::Rng& rng,
                   GanTrainLog* log = nullptr);

struct SyntheticRows {
    std::vector<std::string> ids;      // "synth-<iteration>-<n>"
    std::vector<std::uint8_t> cells;   // row-major, ids.size() x cols
    std::size_t cols = 0;

    [[nodiscard]] std::size_t rows() const { return ids.size(); }
};

/// Binarized generator samples: a cell is 1 iff its probability exceeds the threshold.
SyntheticRows sample_synthetic(const GanModel& gan, std::size_t count, numerics::Rng& rng, std::size_t iteration,
                               double threshold = 0.5);

}  // namespace aladaen::gan
