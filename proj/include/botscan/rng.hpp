#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

namespace botscan {

// SplitMix64 finalizer (Steele, Lea & Flood's constants).
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic SplitMix64 stream, splittable by index so each generated user
// draws from an independent stream regardless of generation order. The child
// state is mix64(seed) ^ mix64(index + 1); this exact construction is part of
// the corpus file-format contract (same seed, same bytes).
class Rng {
public:
    explicit Rng(uint64_t state) : state_(state) {}

    static Rng child(uint64_t seed, uint64_t index) {
        return Rng(mix64(seed) ^ mix64(index + 1));
    }

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo reduction; bias is irrelevant at the corpus
    // sizes this drives and keeps the stream reproducible across builds.
    uint64_t next_below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("next_below: n must be > 0");
        return next_u64() % n;
    }

    uint64_t next_range(uint64_t lo, uint64_t hi) {  // [lo, hi)
        if (lo >= hi) throw std::invalid_argument("next_range: empty range");
        return lo + next_below(hi - lo);
    }

    double next_double() {  // [0, 1), 53-bit mantissa
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bool(double p) { return next_double() < p; }

    // Index drawn proportionally to weights (need not sum to 1).
    size_t next_weighted(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (total <= 0.0) throw std::invalid_argument("next_weighted: no positive weight");
        double r = next_double() * total;
        double acc = 0.0;
        for (size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (r < acc) return i;
        }
        return weights.size() - 1;
    }

private:
    uint64_t state_;
};

}  // namespace botscan
