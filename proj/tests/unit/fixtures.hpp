#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nsmin/costs.hpp"
#include "nsmin/rng.hpp"

namespace nsmin::testing {

// f(S) = max_{i in S} f(S \ i) + fresh nonnegative bump; monotone, otherwise arbitrary.
inline TabularSetFunction random_monotone(int n, RngStream& rng, double scale = 1.0)
{
    TabularSetFunction f(n);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        double base = 0.0;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1)
                base = std::max(base, f.at(m & ~(std::uint64_t{1} << i)));
        f.at(m) = base + scale * rng.uniform();
    }
    return f;
}

inline std::vector<double> random_weights(int n, RngStream& rng, double lo = 0.1, double hi = 1.0)
{
    std::vector<double> w(n);
    for (double& v : w)
        v = rng.uniform(lo, hi);
    return w;
}

// phi(w . chi_S) for a concave phi: submodular.
inline TabularSetFunction concave_of_modular(const std::vector<double>& w, double power = 0.5)
{
    const int n = static_cast<int>(w.size());
    TabularSetFunction f(n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1)
                s += w[i];
        f.at(m) = std::pow(s, power);
    }
    return f;
}

// (w . chi_S)^2: supermodular.
inline TabularSetFunction square_of_modular(const std::vector<double>& w)
{
    return concave_of_modular(w, 2.0);
}

inline DecomposedCost random_monotone_cost(int n, RngStream& rng)
{
    return make_cost(random_monotone(n, rng), random_monotone(n, rng));
}

// The two-element table used in several worked examples.
inline TabularSetFunction small_table()
{
    return TabularSetFunction(2, {0.0, 1.0, 2.0, 2.5});
}

} // namespace nsmin::testing
