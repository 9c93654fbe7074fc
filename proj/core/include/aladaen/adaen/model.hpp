#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aladaen/adaen/attention.hpp"
#include "aladaen/adaen/hyperparams.hpp"
#include "aladaen/numerics/network.hpp"

namespace aladaen::adaen {

enum class Path { ae1, ae2 };

/// Encoder d -> d/2 -> d/4 -> k, optional attention on the latent, and a
/// mirrored decoder ending in a sigmoid. Hidden blocks are LeakyReLU followed
/// by batch norm; dropout follows the first hidden block.
class AutoEncoder {
public:
    numerics::Mlp encoder;
    std::optional<Attention> attention;
    numerics::Mlp decoder;

    AutoEncoder() = default;
    AutoEncoder(std::size_t input_dim, const Hyperparams& hp, bool with_attention, numerics::Rng& init);

    numerics::Tensor2D forward_train(const numerics::Tensor2D& x, numerics::Rng& rng);
    [[nodiscard]] numerics::Tensor2D forward_eval(const numerics::Tensor2D& x) const;
    void backward(const numerics::Tensor2D& upstream);
    void zero_grad();
    std::vector<numerics::ParamRef> params(const std::string& prefix);

    [[nodiscard]] nlohmann::json to_json() const;
    static AutoEncoder from_json(const nlohmann::json& j);
};

struct Reconstructions {
    numerics::Tensor2D ae1;
    numerics::Tensor2D ae2;
};

struct EpochLog {
    std::size_t epoch = 0;
    double train_total = 0.0;
    double train_reconstruction = 0.0;
    double train_adversarial = 0.0;
    double train_discriminator = 0.0;
    double validation = 0.0;
};

struct TrainingLog {
    std::vector<EpochLog> epochs;
    std::size_t best_epoch = 0;
    double best_validation = 0.0;
    bool early_stopped = false;

    [[nodiscard]] nlohmann::json to_json() const;
};

/// AE1 (with attention, the generator), AE2 (the refiner) and a standalone
/// discriminator d -> d/2 -> d/4 -> 1.
class AdaenModel {
public:
    AutoEncoder ae1;
    AutoEncoder ae2;
    numerics::Mlp discriminator;
    Hyperparams hyperparams;
    TrainingLog training_log;

    AdaenModel() = default;
    /// Sub-models draw their initial weights from independent streams of `seed`.
    AdaenModel(std::size_t input_dim, Hyperparams hp, std::uint64_t seed);

    [[nodiscard]] std::size_t input_dim() const { return input_dim_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    /// Train-mode forward of both autoencoders; caches for backward_autoencoders.
    Reconstructions forward_train(const numerics::Tensor2D& x, numerics::Rng& rng);
    void backward_autoencoders(const numerics::Tensor2D& grad_ae1, const numerics::Tensor2D& grad_ae2);

    /// Eval-mode reconstruction: AE1 decodes the attended latent, AE2 does not.
    [[nodiscard]] numerics::Tensor2D reconstruct(Path which, const numerics::Tensor2D& batch) const;
    /// Eval-mode discriminator probabilities, one per row.
    [[nodiscard]] std::vector<double> discriminate(const numerics::Tensor2D& batch) const;

    std::vector<numerics::ParamRef> autoencoder_params();
    std::vector<numerics::ParamRef> discriminator_params();
    void zero_autoencoder_grads();
    void zero_discriminator_grads();

    [[nodiscard]] nlohmann::json to_json() const;
    static AdaenModel from_json(const nlohmann::json& j);

private:
    std::size_t input_dim_ = 0;
    std::uint64_t seed_ = 0;
};

}  // namespace aladaen::adaen
