#pragma once

#include <cstddef>
#include <span>

#include "ggd/graph.hpp"

namespace ggd::scen {

// Counts with Real (or, for pair tasks, "same") as the positive class.
struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    bool operator==(const Confusion&) const = default;
};

struct Metrics {
    double accuracy = 0.0;
    double f1 = 0.0;        // positive class
    double macro_f1 = 0.0;  // mean of both classes' F1
    Confusion confusion;
};

struct Outcome {
    Authenticity truth = Authenticity::Real;
    Authenticity predicted = Authenticity::Real;
};

Metrics metrics_from(const Confusion& c);
// Throws ArgumentError on an empty input.
Metrics evaluate(std::span<const Outcome> outcomes);
// Binary labels in {0, 1} with 1 as the positive class.
Metrics evaluate_binary(std::span<const int> truth, std::span<const int> predicted);

}  // namespace ggd::scen
