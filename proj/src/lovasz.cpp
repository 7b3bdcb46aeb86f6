#include "nsmin/lovasz.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nsmin/errors.hpp"

namespace nsmin {

Point ChainDecomposition::reconstruct() const
{
    Point x = Point::Zero(n());
    for (int i = 0; i <= n(); ++i)
        x += lambdas(i) * characteristic_vector(chain[i], n());
    return x;
}

ChainDecomposition chain_decompose(const Point& x)
{
    const int n = static_cast<int>(x.size());
    if (n > kMaxGroundSize)
        throw InvalidArgument("point dimension " + std::to_string(n) + " exceeds 64");
    for (int j = 0; j < n; ++j)
        if (!(x(j) >= -kDecompositionTolerance && x(j) <= 1.0 + kDecompositionTolerance))
            throw DomainError("coordinate " + std::to_string(j + 1) + " = " + std::to_string(x(j)) +
                              " lies outside [0, 1]");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x(a) > x(b); });

    const auto coord = [&](int i) {
        if (i == 0)
            return 1.0;
        if (i == n + 1)
            return 0.0;
        return std::clamp(x(order[i - 1]), 0.0, 1.0);
    };

    ChainDecomposition cd;
    cd.pi.resize(n);
    cd.chain.reserve(n + 1);
    cd.lambdas.resize(n + 1);
    Subset a = Subset::empty(n);
    cd.chain.push_back(a);
    for (int i = 1; i <= n; ++i) {
        cd.pi[i - 1] = order[i - 1] + 1;
        a = a.with(cd.pi[i - 1]);
        cd.chain.push_back(a);
    }
    for (int i = 0; i <= n; ++i)
        cd.lambdas(i) = coord(i) - coord(i + 1);
    return cd;
}

Vector chain_values(const DecomposedCost& c, const ChainDecomposition& cd)
{
    Vector values(cd.n() + 1);
    for (int i = 0; i <= cd.n(); ++i)
        values(i) = eval(c, cd.chain[i]);
    return values;
}

double lovasz_value(const ChainDecomposition& cd, const Vector& values)
{
    return cd.lambdas.dot(values);
}

double lovasz_value(const DecomposedCost& c, const Point& x)
{
    const auto cd = chain_decompose(x);
    return lovasz_value(cd, chain_values(c, cd));
}

Vector subgradient(const ChainDecomposition& cd, const Vector& values)
{
    Vector g(cd.n());
    for (int i = 1; i <= cd.n(); ++i)
        g(cd.pi[i - 1] - 1) = values(i) - values(i - 1);
    return g;
}

Vector subgradient(const DecomposedCost& c, const Point& x)
{
    const auto cd = chain_decompose(x);
    return subgradient(cd, chain_values(c, cd));
}

int sample_index(const Vector& probs, double u)
{
    if (!(u >= 0.0 && u < 1.0))
        throw InvalidArgument("uniform draw " + std::to_string(u) + " outside [0, 1)");
    double cdf = 0.0;
    int last_positive = -1;
    for (int i = 0; i < probs.size(); ++i) {
        if (probs(i) > 0.0)
            last_positive = i;
        cdf += probs(i);
        if (cdf > u)
            return i;
    }
    if (last_positive < 0)
        throw InvalidArgument("sampling distribution has no positive mass");
    return last_positive;
}

ChainSample sample_chain_set(const ChainDecomposition& cd, double u)
{
    const int i = sample_index(cd.lambdas, u);
    return {i, cd.chain[i]};
}

Vector mixture_probs(const ChainDecomposition& cd, double mu)
{
    if (!(mu >= 0.0 && mu <= 1.0))
        throw InvalidArgument("exploration rate " + std::to_string(mu) + " outside [0, 1]");
    const double floor = mu / (cd.n() + 1);
    return ((1.0 - mu) * cd.lambdas.array() + floor).matrix();
}

} // namespace nsmin
