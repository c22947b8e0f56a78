#include "ggd/detectors/config.hpp"

#include <set>

#include <json.hpp>

#include "ggd/error.hpp"

namespace ggd::detect {

using json = nlohmann::ordered_json;

void DetectorConfig::validate() const {
    if (encoder.widths.empty()) throw ConfigError("encoder needs at least one layer");
    for (auto w : encoder.widths) {
        if (w == 0) throw ConfigError("encoder widths must be positive");
    }
    if (batch_size == 0 || pair_batch_size == 0) throw ConfigError("batch sizes must be positive");
    if (!(lr > 0) || !(classifier_lr > 0)) throw ConfigError("learning rates must be positive");
    if (!(augment_ratio >= 0 && augment_ratio < 1)) throw ConfigError("augment_ratio must lie in [0, 1)");
    if (!(tau > 0)) throw ConfigError("tau must be positive");
    if (!(l2_penalty >= 0)) throw ConfigError("l2_penalty must be non-negative");
    if (n_ps == 0) throw ConfigError("n_ps must be positive");
    if (n_k == 0) throw ConfigError("n_k must be positive");
    if (projection_hidden == 0 || feature_hidden == 0) throw ConfigError("hidden widths must be positive");
}

#define GGD_CONFIG_FIELDS(X)                                                                   \
    X(epochs) X(batch_size) X(lr) X(seed) X(augment_ratio) X(tau) X(projection_hidden)         \
    X(contrastive_epochs) X(classifier_epochs) X(classifier_lr) X(l2_penalty) X(n_ps) X(n_k) \
    X(pair_epochs) X(pair_batch_size) X(reference_cap) X(feature_hidden) X(feature_epochs)

std::string config_to_json(const DetectorConfig& c) {
    json j;
    j["max_degree_bucket"] = c.encoder.max_degree_bucket;
    j["widths"] = c.encoder.widths;
#define GGD_WRITE(name) j[#name] = c.name;
    GGD_CONFIG_FIELDS(GGD_WRITE)
#undef GGD_WRITE
    return j.dump();
}

DetectorConfig config_from_json(const std::string& text, DetectorConfig c) {
    try {
        const json j = json::parse(text);
        if (!j.is_object()) throw ConfigError("detector config must be a JSON object");
        std::set<std::string> known{"max_degree_bucket", "widths"};
#define GGD_KNOWN(name) known.insert(#name);
        GGD_CONFIG_FIELDS(GGD_KNOWN)
#undef GGD_KNOWN
        for (const auto& [key, value] : j.items()) {
            if (!known.contains(key)) throw ConfigError("unknown detector setting '" + key + "'");
        }
        if (j.contains("max_degree_bucket")) c.encoder.max_degree_bucket = j["max_degree_bucket"].get<std::size_t>();
        if (j.contains("widths")) c.encoder.widths = j["widths"].get<std::vector<std::size_t>>();
#define GGD_READ(name) \
    if (j.contains(#name)) c.name = j[#name].get<decltype(c.name)>();
        GGD_CONFIG_FIELDS(GGD_READ)
#undef GGD_READ
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid detector config: ") + e.what());
    }
    c.validate();
    return c;
}

}  // namespace ggd::detect
