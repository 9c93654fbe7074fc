#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aladaen/numerics/rng.hpp"
#include "aladaen/numerics/tensor.hpp"

namespace aladaen::numerics {

/// Fully connected layer y = x W^T + b, with W stored out x in.
struct LinearLayer {
    Tensor2D weight;       // out x in
    Tensor2D bias;         // 1 x out
    Tensor2D grad_weight;  // out x in
    Tensor2D grad_bias;    // 1 x out

    LinearLayer() = default;
    /// Glorot-uniform weights in +-sqrt(6 / (in + out)), zero bias.
    LinearLayer(std::size_t in_dim, std::size_t out_dim, Rng& rng);
    LinearLayer(Tensor2D weight, Tensor2D bias);

    [[nodiscard]] std::size_t in_dim() const { return weight.cols(); }
    [[nodiscard]] std::size_t out_dim() const { return weight.rows(); }

    [[nodiscard]] Tensor2D forward(const Tensor2D& input) const;
    /// Same affine map evaluated one row at a time with a fixed summation
    /// order, so each output row is bit-identical whatever the batch holds.
    [[nodiscard]] Tensor2D forward_rowwise(const Tensor2D& input) const;
    /// Accumulates grad_weight += upstream^T input and grad_bias += column sums,
    /// and returns upstream W.
    Tensor2D backward(const Tensor2D& input, const Tensor2D& upstream);
    /// Input gradient only; parameter gradients are left untouched.
    [[nodiscard]] Tensor2D backward_input(const Tensor2D& upstream) const;

    void zero_grad();
};

[[nodiscard]] Tensor2D leaky_relu(const Tensor2D& input, double slope = 0.2);
/// Gate is 1 for x >= 0 and `slope` for x < 0.
[[nodiscard]] Tensor2D leaky_relu_backward(const Tensor2D& input, const Tensor2D& upstream,
                                           double slope = 0.2);

[[nodiscard]] double sigmoid(double x);
[[nodiscard]] Tensor2D sigmoid(const Tensor2D& input);
/// Takes the forward *output* y and returns y (1 - y) * upstream.
[[nodiscard]] Tensor2D sigmoid_backward(const Tensor2D& output, const Tensor2D& upstream);

/// Max-subtracted softmax. Throws ArgumentError on empty input.
[[nodiscard]] std::vector<double> softmax(std::span<const double> logits);

/// Per-feature batch normalization with learned scale and shift.
class BatchNorm {
public:
    static constexpr double kDefaultMomentum = 0.9;
    static constexpr double kDefaultEpsilon = 1e-5;

    Tensor2D gamma;  // 1 x F
    Tensor2D beta;   // 1 x F
    Tensor2D grad_gamma;
    Tensor2D grad_beta;
    Tensor2D running_mean;
    Tensor2D running_var;
    double momentum = kDefaultMomentum;
    double epsilon = kDefaultEpsilon;
    /// Train-mode batches folded into the running statistics. The first batch
    /// replaces the initial (0, 1) statistics outright.
    std::size_t batches_seen = 0;

    BatchNorm() = default;
    explicit BatchNorm(std::size_t features, double momentum = kDefaultMomentum,
                       double epsilon = kDefaultEpsilon);

    [[nodiscard]] std::size_t features() const { return gamma.cols(); }

    /// Normalizes with batch statistics, caches them for backward, and folds
    /// them into the running statistics. Throws DegenerateBatchError for one row.
    Tensor2D forward_train(const Tensor2D& input);
    [[nodiscard]] Tensor2D forward_eval(const Tensor2D& input) const;
    /// Batch-coupled gradient for the most recent forward_train call.
    Tensor2D backward(const Tensor2D& upstream, bool accumulate = true);

    void zero_grad();

private:
    Tensor2D normalized_;          // cached x-hat
    std::vector<double> inv_std_;  // cached 1/sqrt(var + eps)
};

/// Inverted dropout. The mask drawn in forward_train is replayed by backward.
class Dropout {
public:
    explicit Dropout(double p = 0.2);

    [[nodiscard]] double rate() const { return p_; }

    Tensor2D forward_train(const Tensor2D& input, Rng& rng);
    [[nodiscard]] Tensor2D forward_eval(const Tensor2D& input) const { return input; }
    [[nodiscard]] Tensor2D backward(const Tensor2D& upstream) const;

private:
    double p_;
    Tensor2D mask_;
};

}  // namespace aladaen::numerics
