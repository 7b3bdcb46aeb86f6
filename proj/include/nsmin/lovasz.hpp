#pragma once

#include <vector>

#include "nsmin/costs.hpp"
#include "nsmin/ground.hpp"

namespace nsmin {

inline constexpr double kDecompositionTolerance = 1e-12;

/// Maximal chain and convex weights encoding a point of the hypercube.
///
/// `pi[i-1]` is the (1-indexed) element holding the i-th largest coordinate,
/// `chain[i] = {pi(1), ..., pi(i)}` and `lambdas[i] = x_pi(i) - x_pi(i+1)` with
/// sentinels x_pi(0) = 1 and x_pi(n+1) = 0.
struct ChainDecomposition {
    std::vector<int> pi;
    std::vector<Subset> chain;
    Vector lambdas;

    int n() const { return static_cast<int>(pi.size()); }
    /// sum_i lambdas[i] * chi(chain[i]).
    Point reconstruct() const;
};

/// Sorts coordinates in nonincreasing order, ties by ascending element index.
ChainDecomposition chain_decompose(const Point& x);

/// f(A_0), ..., f(A_n) along the chain; n + 1 oracle evaluations.
Vector chain_values(const DecomposedCost& c, const ChainDecomposition& cd);

/// sum_i lambdas[i] * f(A_i) from precomputed chain values.
double lovasz_value(const ChainDecomposition& cd, const Vector& values);
double lovasz_value(const DecomposedCost& c, const Point& x);

/// g_pi(i) = f(A_i) - f(A_{i-1}) from precomputed chain values.
Vector subgradient(const ChainDecomposition& cd, const Vector& values);
Vector subgradient(const DecomposedCost& c, const Point& x);

/// Smallest index i with sum_{j<=i} probs[j] > u. Falls back to the last index
/// with positive mass when rounding leaves the total just below u.
int sample_index(const Vector& probs, double u);

struct ChainSample {
    int index = 0;
    Subset set;
};

/// Draws A_i with probability lambdas[i] by inverting the CDF at u in [0, 1).
ChainSample sample_chain_set(const ChainDecomposition& cd, double u);

/// (1 - mu) * lambdas + mu / (n + 1).
Vector mixture_probs(const ChainDecomposition& cd, double mu);

} // namespace nsmin
