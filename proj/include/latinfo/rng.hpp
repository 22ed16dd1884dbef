#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace latinfo {

/// splitmix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a, for turning stream tags into ids at compile time.
constexpr std::uint64_t tag(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Philox4x32-10 counter-based generator.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t key) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)} {}

    Block operator()(std::uint64_t counter_lo, std::uint64_t counter_hi = 0) const noexcept;

private:
    std::array<std::uint32_t, 2> key_;
};

/// Sequential view over one Philox key: block i of the stream is Philox(key)(i).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) noexcept : gen_(key) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller; pairs are consumed in order.
    double normal() noexcept;
    /// Uniform integer on [0, n), unbiased (Lemire rejection).
    std::uint64_t bounded(std::uint64_t n) noexcept;

private:
    Philox4x32 gen_;
    std::uint64_t counter_ = 0;
    Philox4x32::Block buffer_{};
    int available_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Key for the stream identified by (seed, ids...); distinct id tuples give unrelated keys.
std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) noexcept;

inline RandomStream make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) noexcept {
    return RandomStream(derive_key(seed, ids));
}

/// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, RandomStream& rng);

}  // namespace latinfo
