#include "ggd/nn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ggd/error.hpp"
#include "ggd/parallel.hpp"

namespace ggd::nn {

std::vector<double> train_minibatches(const ParamList& params, AdamState& adam, const EpochPlan& plan,
                                      const SampleLoss& loss, std::string_view what) {
    if (plan.sample_count == 0) throw TrainError(std::string(what) + ": no training samples");
    const std::size_t batch = std::max<std::size_t>(1, plan.batch_size);
    Rng order_rng(plan.seed);
    std::vector<std::size_t> order(plan.sample_count);
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> log;
    log.reserve(plan.epochs);
    for (std::size_t epoch = 0; epoch < plan.epochs; ++epoch) {
        order_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t count = std::min(batch, order.size() - start);
            std::vector<Gradients> per(count);
            std::vector<Real> losses(count);
            parallel_for(count, [&](std::size_t k) {
                per[k] = zero_gradients(params);
                losses[k] = loss(order[start + k], epoch, per[k]);
            });
            Gradients total = std::move(per[0]);
            epoch_loss += static_cast<double>(losses[0]);
            for (std::size_t k = 1; k < count; ++k) {
                accumulate(total, per[k]);
                epoch_loss += static_cast<double>(losses[k]);
            }
            scale(total, Real(1) / static_cast<Real>(count));
            adam_step(adam, params, total);
        }
        epoch_loss /= static_cast<double>(order.size());
        if (!std::isfinite(epoch_loss) || !all_finite(params)) {
            throw TrainError(std::string(what) + " loss diverged at epoch " + std::to_string(epoch));
        }
        log.push_back(epoch_loss);
    }
    return log;
}

}  // namespace ggd::nn
