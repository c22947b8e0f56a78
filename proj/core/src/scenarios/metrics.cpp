#include "ggd/scenarios/metrics.hpp"

#include "ggd/error.hpp"

namespace ggd::scen {

namespace {
double f1_score(std::size_t tp, std::size_t fp, std::size_t fn) {
    const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    return precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}
}  // namespace

Metrics metrics_from(const Confusion& c) {
    if (c.total() == 0) throw ArgumentError("cannot evaluate an empty prediction set");
    Metrics m;
    m.confusion = c;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    m.f1 = f1_score(c.tp, c.fp, c.fn);
    m.macro_f1 = 0.5 * (m.f1 + f1_score(c.tn, c.fn, c.fp));
    return m;
}

Metrics evaluate(std::span<const Outcome> outcomes) {
    Confusion c;
    for (const auto& o : outcomes) {
        const bool truth = o.truth == Authenticity::Real;
        const bool pred = o.predicted == Authenticity::Real;
        if (truth && pred) ++c.tp;
        else if (!truth && pred) ++c.fp;
        else if (truth && !pred) ++c.fn;
        else ++c.tn;
    }
    return metrics_from(c);
}

Metrics evaluate_binary(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size()) throw ArgumentError("truth and prediction lengths differ");
    Confusion c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool t = truth[i] == 1;
        const bool p = predicted[i] == 1;
        if (t && p) ++c.tp;
        else if (!t && p) ++c.fp;
        else if (t && !p) ++c.fn;
        else ++c.tn;
    }
    return metrics_from(c);
}

}  // namespace ggd::scen
