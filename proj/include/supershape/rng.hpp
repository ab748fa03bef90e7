#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace supershape {

// Seeded generator for every stochastic GA decision. Variates are derived
// from raw 64-bit draws by fixed formulas (no std distributions), so a run is
// a pure function of the seed and the engine state is the whole state.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal, Box-Muller (cosine branch only; nothing is cached).
    double normal();

    // std::mt19937_64 textual state (312 words + index, space separated).
    std::string serialize() const;
    static Rng deserialize(const std::string& state);

    // FNV-1a 64 of serialize(), 16 lowercase hex digits.
    std::string digest() const;

    friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace supershape
