#include "ggd/detectors/embeddings.hpp"

#include <cstdio>

#include "ggd/parallel.hpp"

namespace ggd::detect {

std::string export_embeddings(const DetectorModel& model, const Corpus& corpus) {
    std::vector<std::string> rows(corpus.size());
    std::size_t width = 0;
    if (!corpus.empty()) width = static_cast<std::size_t>(embed_graph(model, corpus[0].graph).cols());
    parallel_for(corpus.size(), [&](std::size_t i) {
        const auto& item = corpus[i];
        const nn::Matrix h = embed_graph(model, item.graph);
        std::string row = std::to_string(i) + ',' + item.dataset_id + ',' +
                          std::string(to_string(item.authenticity)) + ',' + item.generator_id.value_or("");
        char buf[40];
        for (Eigen::Index k = 0; k < h.cols(); ++k) {
            std::snprintf(buf, sizeof buf, ",%.17g", static_cast<double>(h(0, k)));
            row += buf;
        }
        rows[i] = std::move(row);
    });
    std::string out = "graph_id,dataset,authenticity,generator";
    for (std::size_t k = 0; k < width; ++k) out += ",e" + std::to_string(k);
    out += '\n';
    for (const auto& r : rows) {
        out += r;
        out += '\n';
    }
    return out;
}

}  // namespace ggd::detect
