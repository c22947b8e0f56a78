#pragma once

#include <string>

#include "ggd/detectors/model_io.hpp"

namespace ggd::detect {

// CSV with header graph_id,dataset,authenticity,generator,e0..e{d-1}; one
// row per graph in corpus order. graph_id is the position in the corpus and
// the generator column is empty for real graphs.
std::string export_embeddings(const DetectorModel& model, const Corpus& corpus);

}  // namespace ggd::detect
