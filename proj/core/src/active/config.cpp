#include "aladaen/active/config.hpp"

#include <cmath>

#include "aladaen/errors.hpp"

namespace aladaen::active {

void ALConfig::validate() const {
    if (n_iterations == 0) throw ArgumentError("iteration count must be positive");
    if (query_budget == 0) throw ArgumentError("query budget must be positive");
    if (!(percentile > 0.0 && percentile < 100.0)) throw ArgumentError("percentile must lie in (0, 100)");
    if (!(augmentation_ratio >= 0.0) || !std::isfinite(augmentation_ratio)) {
        throw ArgumentError("augmentation ratio must be non-negative");
    }
    gan.validate();
}

nlohmann::json ALConfig::to_json() const {
    return {
        {"n_iterations", n_iterations},
        {"query_budget", query_budget},
        {"percentile", percentile},
        {"recalibrate_threshold", recalibrate_threshold},
        {"retrain_epochs", retrain_epochs},
        {"augmentation_ratio", augmentation_ratio},
        {"min_augmentation_pool", min_augmentation_pool},
        {"stop_on_perfect", stop_on_perfect},
        {"gan",
         {{"steps", gan.steps},
          {"max_batch", gan.max_batch},
          {"noise_dim", gan.noise_dim},
          {"learning_rate", gan.learning_rate},
          {"beta1", gan.beta1},
          {"beta2", gan.beta2},
          {"leaky_slope", gan.leaky_slope},
          {"binarize_threshold", gan.binarize_threshold}}},
    };
}

ALConfig ALConfig::from_json(const nlohmann::json& j) {
    try {
        ALConfig c;
        c.n_iterations = j.at("n_iterations").get<std::size_t>();
        c.query_budget = j.at("query_budget").get<std::size_t>();
        c.percentile = j.at("percentile").get<double>();
        c.recalibrate_threshold = j.at("recalibrate_threshold").get<bool>();
        c.retrain_epochs = j.at("retrain_epochs").get<std::size_t>();
        c.augmentation_ratio = j.at("augmentation_ratio").get<double>();
        c.min_augmentation_pool = j.at("min_augmentation_pool").get<std::size_t>();
        c.stop_on_perfect = j.at("stop_on_perfect").get<bool>();
        const auto& g = j.at("gan");
        c.gan.steps = g.at("steps").get<std::size_t>();
        c.gan.max_batch = g.at("max_batch").get<std::size_t>();
        c.gan.noise_dim = g.at("noise_dim").get<std::size_t>();
        c.gan.learning_rate = g.at("learning_rate").get<double>();
        c.gan.beta1 = g.at("beta1").get<double>();
        c.gan.beta2 = g.at("beta2").get<double>();
        c.gan.leaky_slope = g.at("leaky_slope").get<double>();
        c.gan.binarize_threshold = g.at("binarize_threshold").get<double>();
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid active-learning config: ") + e.what());
    }
}

}  // namespace aladaen::active
