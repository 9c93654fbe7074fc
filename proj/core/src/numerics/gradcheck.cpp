#include "aladaen/numerics/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "aladaen/errors.hpp"

namespace aladaen::numerics {

double relative_error(double analytic, double numeric) {
    return std::abs(analytic - numeric) / std::max(std::abs(analytic) + std::abs(numeric), 1e-8);
}

GradCheckReport finite_difference_check(const std::function<double()>& loss_fn,
                                        std::span<const ParamRef> params, double epsilon) {
    GradCheckReport report;
    const auto evaluate = [&]() {
        const double loss = loss_fn();
        if (!std::isfinite(loss)) throw NumericError("loss is not finite during gradient check");
        return loss;
    };

    for (const auto& p : params) {
        require_same_shape(*p.value, *p.grad, "gradient check");
        // Snapshot the analytic gradient: loss_fn may rerun backward passes.
        const Tensor2D analytic = *p.grad;
        auto values = p.value->values();
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double original = values[i];
            values[i] = original + epsilon;
            const double plus = evaluate();
            values[i] = original - epsilon;
            const double minus = evaluate();
            values[i] = original;

            const double numeric = (plus - minus) / (2.0 * epsilon);
            const double a = analytic.values()[i];
            const double err = relative_error(a, numeric);
            ++report.n_checked;
            if (report.n_checked == 1 || err > report.max_relative_error) {
                report.max_relative_error = err;
                report.worst_param = p.name;
                report.worst_index = i;
                report.worst_analytic = a;
                report.worst_numeric = numeric;
            }
        }
    }
    return report;
}

}  // namespace aladaen::numerics
