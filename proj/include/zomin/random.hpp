#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "zomin/vector.hpp"

namespace zomin {

namespace detail {

// Stafford mix13 finalizer, also the splitmix64 output function.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

/// Deterministic splitmix64-based sample stream.
///
/// Two streams built from equal seeds emit identical sequences. A stream is
/// single-owner mutable state; concurrent workers each take their own child
/// stream via derive_stream. The normal sampler is a fixed Box-Muller
/// transform so that committed golden sequences stay stable across releases.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(detail::mix64(seed)), position_(0) {}

    std::uint64_t position() const { return position_; }

    std::uint64_t next_u64() {
        ++position_;
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    /// Uniform draw in the open interval (0, 1).
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

    /// Standard normal draw; consumes exactly two uniforms.
    double next_normal() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    friend Vector sample_standard_normal(RandomStream&, Eigen::Index);

    std::uint64_t state_;
    std::uint64_t position_;
};

inline RandomStream make_stream(std::uint64_t seed) { return RandomStream(seed); }

/// Child stream derived from (seed, index) alone; pure in both arguments.
/// Distinct indices give statistically independent-looking sub-streams, which
/// is what multi-seed and per-worker parallelism rely on.
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(detail::mix64(seed + detail::kGolden) ^ detail::mix64(index * detail::kGolden + 1));
}

/// n i.i.d. standard normal draws. Pairs share one Box-Muller transform, so
/// the stream advances by 2*ceil(n/2) uniforms.
inline Vector sample_standard_normal(RandomStream& stream, Eigen::Index n) {
    Vector out(n);
    for (Eigen::Index i = 0; i < n; i += 2) {
        const double u1 = stream.next_uniform();
        const double u2 = stream.next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        out[i] = r * std::cos(2.0 * std::numbers::pi * u2);
        if (i + 1 < n) out[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    return out;
}

/// Uniform draw inside an axis-aligned box.
inline Vector sample_uniform_box(RandomStream& stream, const Vector& lo, const Vector& hi) {
    require_same_dim(lo, hi, "sample_uniform_box");
    Vector out(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) out[i] = stream.uniform(lo[i], hi[i]);
    return out;
}

}  // namespace zomin
