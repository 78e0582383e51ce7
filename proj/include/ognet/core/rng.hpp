#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "ognet/core/errors.hpp"

namespace ognet {

// Deterministic random source. mt19937_64 output is fully specified by the
// standard; the distributions below are hand-rolled because the standard
// library's distribution algorithms are implementation-defined and would
// break cross-toolchain reproducibility of seeded runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t uniform_int(std::uint64_t bound) {
        if (bound == 0) throw ArgumentError("uniform_int: bound must be positive");
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % bound;
    }

    // Standard normal draw via Box-Muller, one value per call (no cached
    // spare, so the draw sequence is a pure function of the seed).
    double gaussian() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

    // Fisher-Yates with our own integer draws.
    template <typename V>
    void shuffle(V& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), in random order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        if (k > n) throw ArgumentError("sample_without_replacement: k exceeds population");
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_int(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

    // Random permutation of [0, n) with no fixed point. Used to pair each
    // batch row with a distinct partner.
    std::vector<std::size_t> derangement(std::size_t n) {
        if (n < 2) throw ArgumentError("derangement: need at least two elements");
        std::vector<std::size_t> p(n);
        while (true) {
            for (std::size_t i = 0; i < n; ++i) p[i] = i;
            shuffle(p);
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (p[i] == i) { ok = false; break; }
            }
            if (ok) return p;
        }
    }

    // Stable derivation of independent streams from one experiment seed
    // (splitmix64 finalizer over seed and tag).
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ognet
