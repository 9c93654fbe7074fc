#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "aladaen/numerics/adam.hpp"
#include "aladaen/numerics/tensor.hpp"

namespace aladaen::adaen {

/// Token attention over a latent code.
///
/// A latent z of width k is split into T contiguous tokens h_i of width k/T.
/// Each token is scored e_i = v . h_i, the scores are softmax-normalized into
/// xi, and token i is emitted as T * xi_i * h_i. With v = 0 every xi_i = 1/T
/// and the map is the identity.
class Attention {
public:
    numerics::Tensor2D score_vector;       // 1 x (k / T), the learned v
    numerics::Tensor2D grad_score_vector;

    Attention() = default;
    /// Starts from v = 0. Throws ShapeError unless tokens divides latent_dim.
    Attention(std::size_t latent_dim, std::size_t tokens);

    [[nodiscard]] std::size_t latent_dim() const { return latent_dim_; }
    [[nodiscard]] std::size_t tokens() const { return tokens_; }
    [[nodiscard]] std::size_t token_width() const { return tokens_ == 0 ? 0 : latent_dim_ / tokens_; }

    /// Attention weights xi for one latent row.
    [[nodiscard]] std::vector<double> weights(std::span<const double> latent) const;
    [[nodiscard]] numerics::Tensor2D apply(const numerics::Tensor2D& latent) const;

    /// apply() plus caching for backward().
    numerics::Tensor2D forward_train(const numerics::Tensor2D& latent);
    /// Accumulates into grad_score_vector and returns the latent gradient.
    numerics::Tensor2D backward(const numerics::Tensor2D& upstream);

    void zero_grad() { grad_score_vector.set_zero(); }
    numerics::ParamRef param(const std::string& name) { return {&score_vector, &grad_score_vector, name}; }

    [[nodiscard]] nlohmann::json to_json() const;
    static Attention from_json(const nlohmann::json& j);

private:
    std::size_t latent_dim_ = 0;
    std::size_t tokens_ = 0;
    numerics::Tensor2D input_;    // cached latent
    numerics::Tensor2D weights_;  // cached xi, rows x T
};

/// Free-function form of Attention::apply.
[[nodiscard]] numerics::Tensor2D attention_apply(const numerics::Tensor2D& latent, const Attention& params);

}  // namespace aladaen::adaen
