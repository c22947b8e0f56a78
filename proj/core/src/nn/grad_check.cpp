#include "ggd/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

namespace ggd::nn {

GradCheckReport grad_check(const LossClosure& closure, const ParamList& params, double eps,
                           double scale_floor) {
    Gradients analytic = zero_gradients(params);
    closure(&analytic);

    GradCheckReport report;
    for (std::size_t p = 0; p < params.size(); ++p) {
        Matrix& value = *params[p].value;
        for (Eigen::Index i = 0; i < value.size(); ++i) {
            const Real original = value.data()[i];
            value.data()[i] = static_cast<Real>(original + eps);
            const double up = closure(nullptr);
            value.data()[i] = static_cast<Real>(original - eps);
            const double down = closure(nullptr);
            value.data()[i] = original;

            const double numeric = (up - down) / (2.0 * eps);
            const double a = analytic[p].data()[i];
            const double denom = std::max({std::abs(a), std::abs(numeric), scale_floor});
            const double rel = std::abs(a - numeric) / denom;
            ++report.entries_checked;
            if (rel > report.max_relative_error) {
                report.max_relative_error = rel;
                report.worst_parameter = params[p].name;
            }
        }
    }
    return report;
}

}  // namespace ggd::nn
