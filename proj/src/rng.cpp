#include "nsmin/rng.hpp"

#include <cmath>
#include <numbers>

namespace nsmin {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag)
{
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t tag)
    : seed_(seed), engine_(derive_seed(seed, tag))
{
}

std::uint64_t RngStream::next_u64()
{
    ++counter_;
    return engine_();
}

double RngStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal()
{
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace nsmin
