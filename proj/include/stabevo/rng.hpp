#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace stabevo {

// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
// is fixed by the standard) and provides bias-free sampling helpers so that
// results are identical across platforms and standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Derives an independent stream from a master seed and up to three
    // labels (e.g. generation and individual index).
    static RngStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0) {
        std::uint64_t s = mix(master);
        s = mix(s ^ mix(a + 0x9e3779b97f4a7c15ULL));
        s = mix(s ^ mix(b + 0x7f4a7c159e3779b9ULL));
        s = mix(s ^ mix(c + 0x2545f4914f6cdd1dULL));
        return RngStream(s);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound). bound must be positive.
    std::size_t uniform_index(std::size_t bound) {
        const std::uint64_t b = bound;
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % b;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return static_cast<std::size_t>(v % b);
    }

    // Uniform double in [0, 1) with 53 bits of entropy.
    double uniform_real() { return double(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace stabevo
