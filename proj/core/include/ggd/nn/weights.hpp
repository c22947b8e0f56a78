#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ggd/nn/tensor.hpp"

namespace ggd::nn {

enum class BlobType { F32, F64 };

struct NamedTensor {
    std::string name;
    Matrix value;
};

// A serialized parameter bundle: one JSON header line
//   {"format":"ggd-weights","version":1,"kind":...,"dtype":"f32"|"f64",
//    "tensors":[{"name":...,"shape":[r,c]}...],"meta":{...}}
// followed by '\n' and the row-major little-endian values of every tensor
// in header order.
struct WeightFile {
    std::string kind;
    std::string meta_json = "{}";  // serialized JSON object
    BlobType dtype = BlobType::F64;
    std::vector<NamedTensor> tensors;

    const Matrix& tensor(std::string_view name) const;
};

WeightFile snapshot(std::string kind, const ParamList& params, std::string meta_json, BlobType dtype);
// Copies tensors into `params` by name; shapes must match.
void restore(const WeightFile& file, const ParamList& params);

std::string encode_weights(const WeightFile& file);
WeightFile decode_weights(std::string_view bytes);
void save_weights(const std::filesystem::path& path, const WeightFile& file);
WeightFile load_weights(const std::filesystem::path& path);

}  // namespace ggd::nn
