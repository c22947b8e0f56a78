#include "ggd/nn/weights.hpp"

#include <cstdint>
#include <cstring>

#include <json.hpp>

#include "ggd/corpus_io.hpp"
#include "ggd/error.hpp"

namespace ggd::nn {

using ordered_json = nlohmann::ordered_json;

namespace {

template <typename Word>
void put_le(std::string& out, Word w) {
    for (std::size_t b = 0; b < sizeof(Word); ++b) out.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
}

template <typename Word>
Word get_le(const unsigned char* p) {
    Word w = 0;
    for (std::size_t b = 0; b < sizeof(Word); ++b) w |= static_cast<Word>(p[b]) << (8 * b);
    return w;
}

}  // namespace

const Matrix& WeightFile::tensor(std::string_view name) const {
    for (const auto& t : tensors) {
        if (t.name == name) return t.value;
    }
    throw ParseError("weight file has no tensor '" + std::string(name) + "'");
}

WeightFile snapshot(std::string kind, const ParamList& params, std::string meta_json, BlobType dtype) {
    WeightFile f;
    f.kind = std::move(kind);
    f.meta_json = std::move(meta_json);
    f.dtype = dtype;
    for (const auto& p : params) f.tensors.push_back({p.name, *p.value});
    return f;
}

void restore(const WeightFile& file, const ParamList& params) {
    for (const auto& p : params) {
        const Matrix& src = file.tensor(p.name);
        if (src.rows() != p.value->rows() || src.cols() != p.value->cols()) {
            throw ShapeError("tensor '" + p.name + "' has shape " + shape_string(src) + ", expected " +
                             shape_string(*p.value));
        }
        *p.value = src;
    }
}

std::string encode_weights(const WeightFile& file) {
    ordered_json header;
    header["format"] = "ggd-weights";
    header["version"] = 1;
    header["kind"] = file.kind;
    header["dtype"] = file.dtype == BlobType::F32 ? "f32" : "f64";
    auto tensors = ordered_json::array();
    for (const auto& t : file.tensors) {
        tensors.push_back({{"name", t.name}, {"shape", {t.value.rows(), t.value.cols()}}});
    }
    header["tensors"] = std::move(tensors);
    header["meta"] = ordered_json::parse(file.meta_json);

    std::string out = header.dump();
    out.push_back('\n');
    for (const auto& t : file.tensors) {
        for (Eigen::Index i = 0; i < t.value.size(); ++i) {
            if (file.dtype == BlobType::F32) {
                const float v = static_cast<float>(t.value.data()[i]);
                std::uint32_t w;
                std::memcpy(&w, &v, sizeof w);
                put_le(out, w);
            } else {
                const double v = static_cast<double>(t.value.data()[i]);
                std::uint64_t w;
                std::memcpy(&w, &v, sizeof w);
                put_le(out, w);
            }
        }
    }
    return out;
}

WeightFile decode_weights(std::string_view bytes) {
    const auto newline = bytes.find('\n');
    if (newline == std::string_view::npos) throw ParseError("weight file has no header line");
    ordered_json header;
    try {
        header = ordered_json::parse(bytes.substr(0, newline));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("weight header is not JSON: ") + e.what());
    }
    WeightFile f;
    try {
        if (header.at("format") != "ggd-weights") throw ParseError("not a ggd weight file");
        f.kind = header.at("kind").get<std::string>();
        const auto dtype = header.at("dtype").get<std::string>();
        if (dtype == "f32") {
            f.dtype = BlobType::F32;
        } else if (dtype == "f64") {
            f.dtype = BlobType::F64;
        } else {
            throw ParseError("unknown dtype " + dtype);
        }
        f.meta_json = header.value("meta", ordered_json::object()).dump();
        const std::size_t width = f.dtype == BlobType::F32 ? 4 : 8;
        std::size_t offset = newline + 1;
        const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
        for (const auto& t : header.at("tensors")) {
            const auto rows = t.at("shape").at(0).get<Eigen::Index>();
            const auto cols = t.at("shape").at(1).get<Eigen::Index>();
            NamedTensor nt{t.at("name").get<std::string>(), Matrix(rows, cols)};
            const std::size_t need = static_cast<std::size_t>(rows * cols) * width;
            if (offset + need > bytes.size()) throw ParseError("weight blob is truncated");
            for (Eigen::Index i = 0; i < rows * cols; ++i) {
                const unsigned char* p = raw + offset + static_cast<std::size_t>(i) * width;
                if (f.dtype == BlobType::F32) {
                    const auto w = get_le<std::uint32_t>(p);
                    float v;
                    std::memcpy(&v, &w, sizeof v);
                    nt.value.data()[i] = static_cast<Real>(v);
                } else {
                    const auto w = get_le<std::uint64_t>(p);
                    double v;
                    std::memcpy(&v, &w, sizeof v);
                    nt.value.data()[i] = static_cast<Real>(v);
                }
            }
            offset += need;
            f.tensors.push_back(std::move(nt));
        }
        if (offset != bytes.size()) throw ParseError("trailing bytes after weight blob");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed weight header: ") + e.what());
    }
    return f;
}

void save_weights(const std::filesystem::path& path, const WeightFile& file) {
    write_file_atomic(path, encode_weights(file));
}

WeightFile load_weights(const std::filesystem::path& path) { return decode_weights(read_file(path)); }

}  // namespace ggd::nn
