#include "aladaen/numerics/layers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aladaen/errors.hpp"

namespace aladaen::numerics {

LinearLayer::LinearLayer(std::size_t in_dim, std::size_t out_dim, Rng& rng)
    : weight(out_dim, in_dim), bias(1, out_dim), grad_weight(out_dim, in_dim), grad_bias(1, out_dim) {
    const double limit = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    for (double& w : weight.values()) w = rng.uniform(-limit, limit);
}

LinearLayer::LinearLayer(Tensor2D w, Tensor2D b)
    : weight(std::move(w)), bias(std::move(b)), grad_weight(weight.rows(), weight.cols()),
      grad_bias(1, weight.rows()) {
    if (bias.rows() != 1 || bias.cols() != weight.rows()) {
        throw ShapeError("bias must be 1x" + std::to_string(weight.rows()));
    }
}

Tensor2D LinearLayer::forward(const Tensor2D& input) const {
    if (input.cols() != in_dim()) {
        throw ShapeError("linear layer expects " + std::to_string(in_dim()) + " inputs, got " +
                         std::to_string(input.cols()));
    }
    Matrix out = input.mat() * weight.mat().transpose();
    out.rowwise() += bias.mat().row(0);
    return Tensor2D(std::move(out));
}

Tensor2D LinearLayer::forward_rowwise(const Tensor2D& input) const {
    if (input.cols() != in_dim()) {
        throw ShapeError("linear layer expects " + std::to_string(in_dim()) + " inputs, got " +
                         std::to_string(input.cols()));
    }
    Tensor2D out(input.rows(), out_dim());
    for (std::size_t r = 0; r < input.rows(); ++r) {
        const auto x = input.row(r);
        auto y = out.row(r);
        for (std::size_t o = 0; o < out_dim(); ++o) {
            const auto w = weight.row(o);
            double acc = bias(0, o);
            for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * x[k];
            y[o] = acc;
        }
    }
    return out;
}

Tensor2D LinearLayer::backward(const Tensor2D& input, const Tensor2D& upstream) {
    if (input.cols() != in_dim() || upstream.cols() != out_dim() || upstream.rows() != input.rows()) {
        throw ShapeError("linear backward: upstream does not match forward output");
    }
    grad_weight.mat().noalias() += upstream.mat().transpose() * input.mat();
    grad_bias.mat() += upstream.mat().colwise().sum();
    return Tensor2D(Matrix(upstream.mat() * weight.mat()));
}

Tensor2D LinearLayer::backward_input(const Tensor2D& upstream) const {
    if (upstream.cols() != out_dim()) throw ShapeError("linear backward: upstream width mismatch");
    return Tensor2D(Matrix(upstream.mat() * weight.mat()));
}

void LinearLayer::zero_grad() {
    grad_weight.set_zero();
    grad_bias.set_zero();
}

namespace {

void check_slope(double slope) {
    if (!(slope > 0.0 && slope < 1.0)) throw ArgumentError("leaky slope must lie in (0, 1)");
}

}  // namespace

Tensor2D leaky_relu(const Tensor2D& input, double slope) {
    check_slope(slope);
    Tensor2D out = input;
    for (double& v : out.values()) v = v > 0.0 ? v : slope * v;
    return out;
}

Tensor2D leaky_relu_backward(const Tensor2D& input, const Tensor2D& upstream, double slope) {
    check_slope(slope);
    require_same_shape(input, upstream, "leaky_relu backward");
    Tensor2D out = upstream;
    const auto x = input.values();
    auto g = out.values();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (x[i] < 0.0) g[i] *= slope;
    }
    return out;
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Tensor2D sigmoid(const Tensor2D& input) {
    Tensor2D out = input;
    for (double& v : out.values()) v = sigmoid(v);
    return out;
}

Tensor2D sigmoid_backward(const Tensor2D& output, const Tensor2D& upstream) {
    require_same_shape(output, upstream, "sigmoid backward");
    return Tensor2D(Matrix(upstream.mat().array() * output.mat().array() * (1.0 - output.mat().array())));
}

std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) throw ArgumentError("softmax of an empty vector");
    const double peak = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - peak);
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

BatchNorm::BatchNorm(std::size_t features, double momentum_, double epsilon_)
    : gamma(1, features, 1.0), beta(1, features, 0.0), grad_gamma(1, features), grad_beta(1, features),
      running_mean(1, features, 0.0), running_var(1, features, 1.0), momentum(momentum_),
      epsilon(epsilon_) {}

Tensor2D BatchNorm::forward_train(const Tensor2D& input) {
    if (input.cols() != features()) throw ShapeError("batchnorm feature count mismatch");
    const std::size_t n = input.rows();
    if (n < 2) throw DegenerateBatchError("batch normalization needs at least 2 rows in train mode");

    const auto mean = input.mat().colwise().mean().eval();
    Matrix centered = input.mat().rowwise() - mean;
    const auto var = (centered.array().square().colwise().sum() / static_cast<double>(n)).eval();

    inv_std_.resize(features());
    for (std::size_t j = 0; j < features(); ++j) {
        inv_std_[j] = 1.0 / std::sqrt(var(0, static_cast<Eigen::Index>(j)) + epsilon);
        centered.col(static_cast<Eigen::Index>(j)) *= inv_std_[j];
    }
    normalized_ = Tensor2D(centered);

    if (batches_seen == 0) {
        running_mean.mat() = mean;
        running_var.mat() = var.matrix();
    } else {
        running_mean.mat() = momentum * running_mean.mat() + (1.0 - momentum) * mean;
        running_var.mat() = momentum * running_var.mat() + (1.0 - momentum) * var.matrix();
    }
    ++batches_seen;

    Matrix out = centered.array().rowwise() * gamma.mat().row(0).array();
    out.rowwise() += beta.mat().row(0);
    return Tensor2D(std::move(out));
}

Tensor2D BatchNorm::forward_eval(const Tensor2D& input) const {
    if (input.cols() != features()) throw ShapeError("batchnorm feature count mismatch");
    Tensor2D out = input;
    for (std::size_t j = 0; j < features(); ++j) {
        const double scale = gamma(0, j) / std::sqrt(running_var(0, j) + epsilon);
        const double shift = beta(0, j) - running_mean(0, j) * scale;
        for (std::size_t r = 0; r < out.rows(); ++r) out(r, j) = out(r, j) * scale + shift;
    }
    return out;
}

Tensor2D BatchNorm::backward(const Tensor2D& upstream, bool accumulate) {
    require_same_shape(normalized_, upstream, "batchnorm backward");
    const auto n = static_cast<double>(upstream.rows());
    const auto& g = upstream.mat();
    const auto& xhat = normalized_.mat();
    if (accumulate) {
        grad_gamma.mat() += (g.array() * xhat.array()).colwise().sum().matrix();
        grad_beta.mat() += g.colwise().sum();
    }
    Matrix dxhat = g.array().rowwise() * gamma.mat().row(0).array();
    const auto sum_dxhat = dxhat.colwise().sum().eval();
    const auto sum_dxhat_xhat = (dxhat.array() * xhat.array()).colwise().sum().eval();
    Matrix dx(upstream.rows(), upstream.cols());
    for (Eigen::Index j = 0; j < dx.cols(); ++j) {
        const double scale = inv_std_[static_cast<std::size_t>(j)] / n;
        dx.col(j) = scale * (n * dxhat.col(j).array() - sum_dxhat(0, j) -
                             xhat.col(j).array() * sum_dxhat_xhat(0, j))
                                .matrix();
    }
    return Tensor2D(std::move(dx));
}

void BatchNorm::zero_grad() {
    grad_gamma.set_zero();
    grad_beta.set_zero();
}

Dropout::Dropout(double p) : p_(p) {
    if (!(p >= 0.0 && p < 1.0)) throw ArgumentError("dropout rate must lie in [0, 1)");
}

Tensor2D Dropout::forward_train(const Tensor2D& input, Rng& rng) {
    mask_ = Tensor2D(input.rows(), input.cols(), 1.0);
    if (p_ == 0.0) return input;
    const double keep_scale = 1.0 / (1.0 - p_);
    for (double& m : mask_.values()) m = rng.uniform() < p_ ? 0.0 : keep_scale;
    return Tensor2D(Matrix(input.mat().array() * mask_.mat().array()));
}

Tensor2D Dropout::backward(const Tensor2D& upstream) const {
    require_same_shape(mask_, upstream, "dropout backward");
    return Tensor2D(Matrix(upstream.mat().array() * mask_.mat().array()));
}

}  // namespace aladaen::numerics
