#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aladaen/numerics/tensor.hpp"

namespace aladaen::numerics {

struct AdamConfig {
    double learning_rate = 1e-4;
    double beta1 = 0.5;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    Tensor2D first_moment;
    Tensor2D second_moment;
    std::int64_t timestep = 0;
};

/// One bias-corrected Adam update of `param` in place. Moments are lazily
/// sized on the first call; later shape disagreement throws ShapeError.
void adam_step(Tensor2D& param, const Tensor2D& grad, AdamState& state, const AdamConfig& config);

/// A trainable tensor and its gradient buffer.
struct ParamRef {
    Tensor2D* value;
    Tensor2D* grad;
    std::string name;
};

class Adam {
public:
    Adam(std::vector<ParamRef> params, AdamConfig config);

    void step();
    void zero_grad();

    [[nodiscard]] std::int64_t timestep() const { return states_.empty() ? 0 : states_.front().timestep; }
    [[nodiscard]] const AdamConfig& config() const { return config_; }

private:
    std::vector<ParamRef> params_;
    std::vector<AdamState> states_;
    AdamConfig config_;
};

}  // namespace aladaen::numerics
