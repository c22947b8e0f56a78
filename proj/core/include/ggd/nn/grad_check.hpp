#pragma once

#include <functional>

#include "ggd/nn/tensor.hpp"

namespace ggd::nn {

// Returns the loss; when `grads` is non-null it must also fill the analytic
// gradient of every parameter (same order as the ParamList).
using LossClosure = std::function<Real(Gradients* grads)>;

struct GradCheckReport {
    double max_relative_error = 0;
    std::size_t entries_checked = 0;
    std::string worst_parameter;
};

// Central finite differences against the analytic gradient. The relative
// error of an entry is |a - n| / max(|a|, |n|, scale_floor).
GradCheckReport grad_check(const LossClosure& closure, const ParamList& params, double eps = 1e-6,
                           double scale_floor = 1e-3);

}  // namespace ggd::nn
