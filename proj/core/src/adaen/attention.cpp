#include "aladaen/adaen/attention.hpp"

#include "aladaen/errors.hpp"
#include "aladaen/numerics/layers.hpp"
#include "aladaen/numerics/network.hpp"

namespace aladaen::adaen {

using numerics::Tensor2D;

Attention::Attention(std::size_t latent_dim, std::size_t tokens) : latent_dim_(latent_dim), tokens_(tokens) {
    if (tokens == 0 || latent_dim % tokens != 0) {
        throw ShapeError("latent width " + std::to_string(latent_dim) + " is not divisible into " +
                         std::to_string(tokens) + " tokens");
    }
    score_vector = Tensor2D(1, latent_dim / tokens);
    grad_score_vector = Tensor2D(1, latent_dim / tokens);
}

std::vector<double> Attention::weights(std::span<const double> latent) const {
    if (latent.size() != latent_dim_) throw ShapeError("attention input width mismatch");
    const std::size_t w = token_width();
    std::vector<double> scores(tokens_, 0.0);
    for (std::size_t i = 0; i < tokens_; ++i) {
        double e = 0.0;
        for (std::size_t c = 0; c < w; ++c) e += score_vector(0, c) * latent[i * w + c];
        scores[i] = e;
    }
    return numerics::softmax(scores);
}

Tensor2D Attention::apply(const Tensor2D& latent) const {
    if (latent.cols() != latent_dim_) throw ShapeError("attention input width mismatch");
    Tensor2D out(latent.rows(), latent_dim_);
    const std::size_t w = token_width();
    const auto t = static_cast<double>(tokens_);
    for (std::size_t r = 0; r < latent.rows(); ++r) {
        const auto z = latent.row(r);
        const auto xi = weights(z);
        auto y = out.row(r);
        for (std::size_t i = 0; i < tokens_; ++i) {
            const double scale = t * xi[i];
            for (std::size_t c = 0; c < w; ++c) y[i * w + c] = scale * z[i * w + c];
        }
    }
    return out;
}

Tensor2D Attention::forward_train(const Tensor2D& latent) {
    input_ = latent;
    weights_ = Tensor2D(latent.rows(), tokens_);
    for (std::size_t r = 0; r < latent.rows(); ++r) {
        const auto xi = weights(latent.row(r));
        std::copy(xi.begin(), xi.end(), weights_.row(r).begin());
    }
    return apply(latent);
}

Tensor2D Attention::backward(const Tensor2D& upstream) {
    numerics::require_same_shape(input_, upstream, "attention backward");
    const std::size_t w = token_width();
    const auto t = static_cast<double>(tokens_);
    Tensor2D grad_in(upstream.rows(), latent_dim_);
    std::vector<double> s(tokens_);
    for (std::size_t r = 0; r < upstream.rows(); ++r) {
        const auto h = input_.row(r);
        const auto g = upstream.row(r);
        const auto xi = weights_.row(r);
        auto dh = grad_in.row(r);

        double weighted = 0.0;
        for (std::size_t i = 0; i < tokens_; ++i) {
            double dot = 0.0;
            for (std::size_t c = 0; c < w; ++c) dot += g[i * w + c] * h[i * w + c];
            s[i] = dot;
            weighted += xi[i] * dot;
        }
        for (std::size_t j = 0; j < tokens_; ++j) {
            const double de = t * xi[j] * (s[j] - weighted);
            for (std::size_t c = 0; c < w; ++c) {
                dh[j * w + c] = t * xi[j] * g[j * w + c] + de * score_vector(0, c);
                grad_score_vector(0, c) += de * h[j * w + c];
            }
        }
    }
    return grad_in;
}

nlohmann::json Attention::to_json() const {
    return {{"latent_dim", latent_dim_}, {"tokens", tokens_}, {"score_vector", numerics::tensor_to_json(score_vector)}};
}

Attention Attention::from_json(const nlohmann::json& j) {
    Attention a(j.at("latent_dim").get<std::size_t>(), j.at("tokens").get<std::size_t>());
    auto v = numerics::tensor_from_json(j.at("score_vector"));
    numerics::require_same_shape(a.score_vector, v, "attention checkpoint");
    a.score_vector = std::move(v);
    return a;
}

Tensor2D attention_apply(const Tensor2D& latent, const Attention& params) { return params.apply(latent); }

}  // namespace aladaen::adaen
