#pragma once

#include <cstdint>
#include <cmath>

namespace hsdist {

/// Splittable counter-style generator. A stream is keyed by (seed, stream
/// index); distinct indices land at well-separated pseudo-random offsets of
/// the underlying 2^64-period sequence, so parallel trials can each own an
/// independent stream. Identical (seed, stream) reproduces the exact same
/// draw sequence on every platform with IEEE doubles.
///
/// Core: SplitMix64 increment/finalizer. Normal variates: Box-Muller with
/// the second variate of each pair cached.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        const std::uint64_t a = mix(seed + kGamma);
        const std::uint64_t b = mix(stream + 0xD1B54A32D192ED03ULL);
        state_ = mix(a ^ (b + kGamma));
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal variate.
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace hsdist
