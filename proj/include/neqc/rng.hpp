#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace neqc {

/// Deterministic random source. Wraps std::mt19937_64 with explicit
/// uniform/normal conversions so that a given seed produces the same
/// stream on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound). Rejection sampling, unbiased.
    std::uint64_t uniform_int(std::uint64_t bound);

    /// Standard normal deviate (Box-Muller; the spare value is cached).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Derives an independent stream seed from a base seed, a purpose tag and an
/// index. All randomness in the project flows from one base seed through
/// this function, so every artifact is reproducible from (base seed, tag,
/// index) alone.
std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose,
                          std::uint64_t index = 0);

} // namespace neqc
