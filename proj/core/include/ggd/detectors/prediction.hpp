#pragma once

#include <string_view>

#include "ggd/graph.hpp"

namespace ggd::detect {

// Class scores of one graph. For the end-to-end and feature models the two
// posteriors are softmax outputs; for the metric model they are the mean
// pair posteriors against each label's references. Ties go to Real.
struct Prediction {
    Authenticity label = Authenticity::Real;
    double p_real = 0.5;
    double p_generated = 0.5;
};

// Class index used by the two-logit models: 0 = Real, 1 = Generated.
inline int label_index(Authenticity a) noexcept { return a == Authenticity::Real ? 0 : 1; }

Prediction decide(double p_real, double p_generated) noexcept;

// Throws TrainError unless both labels occur in the corpus.
void require_both_labels(const Corpus& corpus, std::string_view what);

}  // namespace ggd::detect
