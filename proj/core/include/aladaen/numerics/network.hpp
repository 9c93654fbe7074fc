#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aladaen/numerics/adam.hpp"
#include "aladaen/numerics/layers.hpp"

namespace aladaen::numerics {

enum class Activation { identity, leaky_relu, sigmoid };

/// One dense block: linear, activation, then optional batch norm and dropout.
struct BlockSpec {
    std::size_t width = 0;
    Activation activation = Activation::leaky_relu;
    bool batch_norm = false;
    double dropout = 0.0;
};

/// Feed-forward stack of dense blocks with hand-written reverse pass.
///
/// forward_train caches every intermediate needed by backward; a second
/// forward_train overwrites the cache. forward_eval is const and uses running
/// batch-norm statistics with dropout disabled.
class Mlp {
public:
    Mlp() = default;
    Mlp(std::size_t input_dim, std::vector<BlockSpec> blocks, double leaky_slope, Rng& rng);

    [[nodiscard]] std::size_t input_dim() const { return input_dim_; }
    [[nodiscard]] std::size_t output_dim() const;
    [[nodiscard]] std::size_t depth() const { return blocks_.size(); }

    Tensor2D forward_train(const Tensor2D& input, Rng& rng);
    [[nodiscard]] Tensor2D forward_eval(const Tensor2D& input) const;
    /// Reverse pass for the cached forward_train. With accumulate=false only
    /// the input gradient is produced and parameter buffers stay unchanged.
    Tensor2D backward(const Tensor2D& upstream, bool accumulate = true);

    void zero_grad();
    /// Parameters named `<prefix>.<block>.<tensor>`.
    std::vector<ParamRef> params(const std::string& prefix);

    LinearLayer& linear(std::size_t block) { return blocks_.at(block).linear; }
    [[nodiscard]] const LinearLayer& linear(std::size_t block) const { return blocks_.at(block).linear; }
    std::optional<BatchNorm>& norm(std::size_t block) { return blocks_.at(block).norm; }

    [[nodiscard]] nlohmann::json to_json() const;
    static Mlp from_json(const nlohmann::json& j);

private:
    struct Block {
        BlockSpec spec;
        LinearLayer linear;
        std::optional<BatchNorm> norm;
        std::optional<Dropout> dropout;
        Tensor2D input;       // cached block input
        Tensor2D pre;         // cached linear output
        Tensor2D activated;   // cached activation output
    };

    std::size_t input_dim_ = 0;
    double slope_ = 0.2;
    std::vector<Block> blocks_;
};

[[nodiscard]] nlohmann::json tensor_to_json(const Tensor2D& t);
[[nodiscard]] Tensor2D tensor_from_json(const nlohmann::json& j);

}  // namespace aladaen::numerics
