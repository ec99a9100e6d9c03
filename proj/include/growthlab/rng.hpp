#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace growthlab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace detail

/// Deterministic RNG stream derived from (seed, label, index). All
/// randomness in the project flows through this; std library
/// distributions are avoided so that outputs are identical across
/// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::string_view label = {}, std::uint64_t index = 0) {
        std::uint64_t state = seed;
        detail::splitmix64(state);
        state ^= detail::fnv1a(label);
        detail::splitmix64(state);
        state ^= index * 0x9e3779b97f4a7c15ULL;
        std::uint64_t init = detail::splitmix64(state);
        eng_.seed(init);
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform value in [0, bound), bound >= 1. Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t r = eng_();
            if (r >= threshold) return r % bound;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct indices from [0, n), in random order.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < k && i < n; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k < n ? k : n);
        return idx;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace growthlab
