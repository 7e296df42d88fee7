#pragma once

#include <array>
#include <cstdint>

namespace vclass {

/// xoshiro256++ stream. Hand-rolled instead of <random> engines +
/// distributions because the schedule contract is bit-for-bit
/// reproducibility for a given seed, and the standard distributions are
/// implementation-defined.
class RngStream {
  public:
    RngStream() = default;
    explicit RngStream(std::uint64_t key);

    std::uint64_t next_u64();

    /// Uniform in [lo, hi). 53-bit mantissa path.
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, unbiased.
    std::uint32_t uniform_index(std::uint32_t n);

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

  private:
    std::array<std::uint64_t, 4> state_{1, 2, 3, 4};
};

/// Splittable seeded source: one independent stream per character plus a
/// master stream for batch-level draws. Identical seed -> identical
/// streams, regardless of construction order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    RngStream stream(std::uint64_t stream_id) const;
    RngStream character_stream(int character_id) const;
    RngStream master() const;

    /// Secondary per-character stream for gaze micro-cycles so they never
    /// perturb the schedule draws.
    RngStream gaze_stream(int character_id) const;

  private:
    std::uint64_t seed_;
};

} // namespace vclass
