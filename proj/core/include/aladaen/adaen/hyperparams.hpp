#pragma once

#include <cstddef>

#include <nlohmann/json.hpp>

namespace aladaen::adaen {

struct Hyperparams {
    std::size_t latent_dim = 32;
    std::size_t attention_tokens = 8;
    double alpha = 0.5;   // weight of AE1 in the combined reconstruction error
    double lambda = 0.5;  // weight of the adversarial term
    double learning_rate = 1e-4;
    double beta1 = 0.5;
    double beta2 = 0.999;
    std::size_t batch_size = 128;
    std::size_t max_epochs = 300;
    std::size_t patience = 10;
    double leaky_slope = 0.2;
    double dropout_p = 0.2;

    /// Throws ArgumentError when a field is out of range.
    void validate() const;

    [[nodiscard]] nlohmann::json to_json() const;
    static Hyperparams from_json(const nlohmann::json& j);
};

/// Hidden widths [d/2, d/4] rounded up and floored at max(k, 4).
struct LayerWidths {
    std::size_t input = 0;
    std::size_t hidden1 = 0;
    std::size_t hidden2 = 0;
    std::size_t latent = 0;
};

[[nodiscard]] LayerWidths autoencoder_widths(std::size_t input_dim, std::size_t latent_dim);

}  // namespace aladaen::adaen
