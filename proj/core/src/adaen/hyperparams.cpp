#include "aladaen/adaen/hyperparams.hpp"

#include <algorithm>

#include "aladaen/errors.hpp"

namespace aladaen::adaen {

void Hyperparams::validate() const {
    if (latent_dim == 0 || attention_tokens == 0) throw ArgumentError("latent dimension and token count must be positive");
    if (latent_dim % attention_tokens != 0) throw ArgumentError("latent dimension must be divisible by the token count");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
    if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
    if (!(learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ArgumentError("Adam betas must lie in [0, 1)");
    if (batch_size < 2) throw ArgumentError("batch size must be at least 2 for batch normalization");
    if (!(leaky_slope > 0.0 && leaky_slope < 1.0)) throw ArgumentError("leaky slope must lie in (0, 1)");
    if (!(dropout_p >= 0.0 && dropout_p < 1.0)) throw ArgumentError("dropout rate must lie in [0, 1)");
}

nlohmann::json Hyperparams::to_json() const {
    return {{"latent_dim", latent_dim},   {"attention_tokens", attention_tokens},
            {"alpha", alpha},             {"lambda", lambda},
            {"learning_rate", learning_rate}, {"beta1", beta1},
            {"beta2", beta2},             {"batch_size", batch_size},
            {"max_epochs", max_epochs},   {"patience", patience},
            {"leaky_slope", leaky_slope}, {"dropout_p", dropout_p}};
}

Hyperparams Hyperparams::from_json(const nlohmann::json& j) {
    Hyperparams hp;
    hp.latent_dim = j.at("latent_dim").get<std::size_t>();
    hp.attention_tokens = j.at("attention_tokens").get<std::size_t>();
    hp.alpha = j.at("alpha").get<double>();
    hp.lambda = j.at("lambda").get<double>();
    hp.learning_rate = j.at("learning_rate").get<double>();
    hp.beta1 = j.at("beta1").get<double>();
    hp.beta2 = j.at("beta2").get<double>();
    hp.batch_size = j.at("batch_size").get<std::size_t>();
    hp.max_epochs = j.at("max_epochs").get<std::size_t>();
    hp.patience = j.at("patience").get<std::size_t>();
    hp.leaky_slope = j.at("leaky_slope").get<double>();
    hp.dropout_p = j.at("dropout_p").get<double>();
    hp.validate();
    return hp;
}

LayerWidths autoencoder_widths(std::size_t input_dim, std::size_t latent_dim) {
    const std::size_t floor_width = std::max<std::size_t>(latent_dim, 4);
    return {input_dim, std::max((input_dim + 1) / 2, floor_width), std::max((input_dim + 3) / 4, floor_width),
            latent_dim};
}

}  // namespace aladaen::adaen
