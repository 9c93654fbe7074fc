#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "aladaen/numerics/adam.hpp"

namespace aladaen::numerics {

struct GradCheckReport {
    double max_relative_error = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
    std::size_t n_checked = 0;
};

/// |a - n| / max(|a| + |n|, 1e-8).
[[nodiscard]] double relative_error(double analytic, double numeric);

/// Compares the gradients already stored in each ParamRef::grad against central
/// differences (L(p + eps) - L(p - eps)) / 2 eps of `loss_fn`. `loss_fn` must be
/// deterministic and must not touch the gradient buffers' contents that are
/// being checked (it may overwrite other state). Throws NumericError when a
/// perturbed loss is not finite.
GradCheckReport finite_difference_check(const std::function<double()>& loss_fn,
                                        std::span<const ParamRef> params,
                                        double epsilon = 1e-4);

}  // namespace aladaen::numerics
