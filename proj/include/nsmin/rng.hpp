#pragma once

#include <cstdint>
#include <random>

namespace nsmin {

/// Mixes a base seed with a stream tag (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);

// Stream tags. Learner and data randomness never share a generator.
inline constexpr std::uint64_t kLearnerStream = 0x6c6561726e6572ULL;
inline constexpr std::uint64_t kDataStream = 0x64617461ULL;
inline constexpr std::uint64_t kPilotStream = 0x70696c6f74ULL;

/// Seeded random stream with platform-independent transforms.
///
/// The engine is std::mt19937_64 (bit-exact by the standard); uniform and
/// normal variates are produced here rather than by <random> distributions,
/// whose algorithms differ between standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t tag = 0);

    std::uint64_t seed() const { return seed_; }
    /// Number of 64-bit words consumed so far.
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller; consumes exactly two words.
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t counter_ = 0;
};

} // namespace nsmin
