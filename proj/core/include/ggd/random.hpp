#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace ggd {

// Seed hash chain: every sub-seed in the toolkit is derived from one
// experiment seed through derive_seed(parent, tag...).
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept;
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> tags) noexcept;
std::uint64_t hash_string(std::string_view text) noexcept;

// xoshiro256** with portable helper distributions. The std:: distributions
// are implementation-defined, so the toolkit never uses them: outputs must
// be byte-identical across standard libraries for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) noexcept;

    std::uint64_t next() noexcept;
    // Uniform in [0, 1).
    double uniform() noexcept;
    // Uniform integer in [0, bound); bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;
    // Uniform integer in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) noexcept;
    bool bernoulli(double p) noexcept;
    double normal() noexcept;

    template <typename T>
    void shuffle(std::span<T> values) noexcept {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = below(i);
            std::swap(values[i - 1], values[j]);
        }
    }
    template <typename T>
    void shuffle(std::vector<T>& values) noexcept {
        shuffle(std::span<T>(values));
    }

    // k distinct indices from [0, n), in ascending order.
    std::vector<std::size_t> choose(std::size_t n, std::size_t k);

private:
    std::uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ggd
