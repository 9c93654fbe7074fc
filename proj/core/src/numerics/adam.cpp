#include "aladaen/numerics/adam.hpp"

#include <cmath>

#include "aladaen/errors.hpp"

namespace aladaen::numerics {

void adam_step(Tensor2D& param, const Tensor2D& grad, AdamState& state, const AdamConfig& config) {
    require_same_shape(param, grad, "adam step");
    if (state.first_moment.empty() && state.second_moment.empty()) {
        state.first_moment = Tensor2D(param.rows(), param.cols());
        state.second_moment = Tensor2D(param.rows(), param.cols());
    }
    require_same_shape(param, state.first_moment, "adam first moment");
    require_same_shape(param, state.second_moment, "adam second moment");

    ++state.timestep;
    const auto t = static_cast<double>(state.timestep);
    const double correction1 = 1.0 - std::pow(config.beta1, t);
    const double correction2 = 1.0 - std::pow(config.beta2, t);

    auto m = state.first_moment.mat().array();
    auto v = state.second_moment.mat().array();
    const auto g = grad.mat().array();
    m = config.beta1 * m + (1.0 - config.beta1) * g;
    v = config.beta2 * v + (1.0 - config.beta2) * g.square();
    param.mat().array() -=
        config.learning_rate * (m / correction1) / ((v / correction2).sqrt() + config.epsilon);
}

Adam::Adam(std::vector<ParamRef> params, AdamConfig config)
    : params_(std::move(params)), states_(params_.size()), config_(config) {}

void Adam::step() {
    for (std::size_t i = 0; i < params_.size(); ++i) {
        adam_step(*params_[i].value, *params_[i].grad, states_[i], config_);
    }
}

void Adam::zero_grad() {
    for (auto& p : params_) p.grad->set_zero();
}

}  // namespace aladaen::numerics
