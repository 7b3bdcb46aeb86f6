#include "nsmin/costs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "nsmin/errors.hpp"

namespace nsmin {

namespace {

std::size_t table_size(int n)
{
    if (n < 0 || n > kMaxEnumerableSize)
        throw CapacityError("tabular set functions limited to n <= " +
                            std::to_string(kMaxEnumerableSize) + ", got n = " + std::to_string(n));
    return std::size_t{1} << n;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

TabularSetFunction::TabularSetFunction(int n) : n_(n), values_(table_size(n), 0.0) {}

TabularSetFunction::TabularSetFunction(int n, std::vector<double> values)
    : n_(n), values_(std::move(values))
{
    if (values_.size() != table_size(n))
        throw InvalidArgument("table for n = " + std::to_string(n) + " needs " +
                              std::to_string(table_size(n)) + " values, got " +
                              std::to_string(values_.size()));
}

TabularSetFunction TabularSetFunction::from_oracle(int n, const SetOracle& f)
{
    TabularSetFunction t(n);
    for (std::uint64_t m = 0; m < t.values_.size(); ++m)
        t.values_[m] = f(Subset(n, m));
    return t;
}

void TabularSetFunction::write(std::ostream& os) const
{
    os << n_ << '\n';
    for (std::uint64_t m = 0; m < values_.size(); ++m)
        os << Subset(n_, m).to_hex() << ' ' << format_double(values_[m]) << '\n';
}

TabularSetFunction TabularSetFunction::read(std::istream& is)
{
    int n = -1;
    if (!(is >> n))
        throw InvalidArgument("tabular set function: missing ground-set size on first line");
    TabularSetFunction t(n);
    std::vector<bool> seen(t.values_.size(), false);
    std::string hex;
    double value = 0.0;
    std::size_t line = 1;
    while (is >> hex) {
        ++line;
        if (!(is >> value))
            throw InvalidArgument("tabular set function: missing value on line " + std::to_string(line));
        const Subset s = Subset::from_hex(n, hex);
        if (seen[s.bits()])
            throw InvalidArgument("tabular set function: duplicate mask " + hex + " on line " +
                                  std::to_string(line));
        seen[s.bits()] = true;
        t.values_[s.bits()] = value;
    }
    const auto missing = std::count(seen.begin(), seen.end(), false);
    if (missing != 0)
        throw InvalidArgument("tabular set function: " + std::to_string(missing) + " of " +
                              std::to_string(seen.size()) + " masks missing");
    return t;
}

void TabularSetFunction::save(const std::filesystem::path& path) const
{
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    write(out);
}

TabularSetFunction TabularSetFunction::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path.string());
    try {
        return read(in);
    } catch (const Error& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

SetOracle TabularSetFunction::oracle() const
{
    auto shared = std::make_shared<const TabularSetFunction>(*this);
    return [shared](const Subset& s) { return (*shared)(s); };
}

SetOracle zero_function()
{
    return [](const Subset&) { return 0.0; };
}

SetOracle modular_function(std::vector<double> weights)
{
    return [w = std::move(weights)](const Subset& s) {
        double sum = 0.0;
        for (int e : s.elements())
            sum += w[e - 1];
        return sum;
    };
}

DecomposedCost make_cost(const TabularSetFunction& fbar, const TabularSetFunction& funder)
{
    if (fbar.n() != funder.n())
        throw InvalidArgument("fbar and funder tables disagree on n");
    return DecomposedCost{fbar.n(), fbar.oracle(), funder.oracle(), std::nullopt};
}

DecomposedCost make_modular_cost(std::span<const double> weights)
{
    std::vector<double> pos(weights.size()), neg(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        pos[i] = std::max(weights[i], 0.0);
        neg[i] = std::max(-weights[i], 0.0);
    }
    return DecomposedCost{static_cast<int>(weights.size()), modular_function(std::move(pos)),
                          modular_function(std::move(neg)), std::nullopt};
}

double eval(const DecomposedCost& c, const Subset& s)
{
    if (s.n() != c.n)
        throw InvalidArgument("subset over [" + std::to_string(s.n()) + "] evaluated on a cost over [" +
                              std::to_string(c.n) + "]");
    try {
        return c.fbar(s) - c.funder(s);
    } catch (const std::exception& e) {
        throw Error("cost oracle failed at set " + s.to_hex() + ": " + e.what());
    }
}

LBound bound_L(const DecomposedCost& c)
{
    const Subset all = Subset::full(c.n);
    LBound b;
    b.computed = c.fbar(all) + c.funder(all);
    b.value = b.computed;
    if (c.L_hint) {
        b.value = std::max(*c.L_hint, b.computed);
        b.violated = b.computed > *c.L_hint;
    }
    return b;
}

double monotone_tolerance(const DecomposedCost& c)
{
    const Subset all = Subset::full(c.n);
    return 1e-9 * std::max({1.0, std::abs(c.fbar(all)), std::abs(c.funder(all))});
}

std::string CostViolation::describe() const
{
    std::ostringstream os;
    os << (part == Part::fbar ? "fbar" : "funder") << ": ";
    if (kind == Kind::normalization)
        os << "not normalized, value at empty set is " << format_double(before);
    else
        os << "decreases when adding element " << element << " to " << set << " (" << set.to_hex()
           << "): " << format_double(before) << " -> " << format_double(after);
    return os.str();
}

ValidationReport validate_cost(const DecomposedCost& c)
{
    if (c.n > kMaxEnumerableSize)
        throw CapacityError("validate_cost limited to n <= " + std::to_string(kMaxEnumerableSize) +
                            ", got n = " + std::to_string(c.n));
    const double tol = monotone_tolerance(c);
    ValidationReport report;
    const auto check_part = [&](CostViolation::Part part, const SetOracle& f) {
        const TabularSetFunction t = TabularSetFunction::from_oracle(c.n, f);
        if (t.at(0) != 0.0)
            report.violations.push_back(
                {part, CostViolation::Kind::normalization, Subset::empty(c.n), 0, t.at(0), t.at(0)});
        const std::uint64_t count = std::uint64_t{1} << c.n;
        for (std::uint64_t m = 0; m < count; ++m) {
            for (int i = 0; i < c.n; ++i) {
                const std::uint64_t bit = std::uint64_t{1} << i;
                if (m & bit)
                    continue;
                if (t.at(m | bit) < t.at(m) - tol)
                    report.violations.push_back({part, CostViolation::Kind::monotonicity, Subset(c.n, m),
                                                 i + 1, t.at(m), t.at(m | bit)});
            }
        }
    };
    check_part(CostViolation::Part::fbar, c.fbar);
    check_part(CostViolation::Part::funder, c.funder);
    return report;
}

namespace {

// Marginal f(i|A) for A without i; tiny negatives inside the tolerance are clamped to 0.
double marginal(const TabularSetFunction& f, std::uint64_t a, int i, double tol)
{
    const std::uint64_t bit = std::uint64_t{1} << i;
    const double m = f.at(a | bit) - f.at(a);
    if (m < -tol)
        throw MonotonicityError("negative marginal f(" + std::to_string(i + 1) + " | " +
                                Subset(f.n(), a).to_hex() + ") = " + format_double(m));
    return std::max(m, 0.0);
}

enum class Extremum { min, max };

// For element i, fills out[B] = extremum over A subset-of B of f(i|A), for every B without i.
// Sum-over-subsets sweep, O(n 2^n) per element.
void subset_extremum(const TabularSetFunction& f, int i, double tol, Extremum which,
                     std::vector<double>& out)
{
    const int n = f.n();
    const std::uint64_t count = std::uint64_t{1} << n;
    const std::uint64_t ibit = std::uint64_t{1} << i;
    out.assign(count, 0.0);
    for (std::uint64_t m = 0; m < count; ++m)
        if (!(m & ibit))
            out[m] = marginal(f, m, i, tol);
    for (int j = 0; j < n; ++j) {
        if (j == i)
            continue;
        const std::uint64_t jbit = std::uint64_t{1} << j;
        for (std::uint64_t m = 0; m < count; ++m) {
            if ((m & ibit) || !(m & jbit))
                continue;
            out[m] = which == Extremum::min ? std::min(out[m], out[m ^ jbit])
                                            : std::max(out[m], out[m ^ jbit]);
        }
    }
}

void check_weak_dr_size(int n)
{
    if (n > kMaxWeakDRSize)
        throw CapacityError("weak-DR estimation limited to n <= " + std::to_string(kMaxWeakDRSize) +
                            ", got n = " + std::to_string(n));
}

} // namespace

double weak_dr_submodularity_ratio(const TabularSetFunction& f, double tolerance)
{
    check_weak_dr_size(f.n());
    const std::uint64_t count = std::uint64_t{1} << f.n();
    double ratio = 1.0;
    std::vector<double> lowest;
    for (int i = 0; i < f.n(); ++i) {
        subset_extremum(f, i, tolerance, Extremum::min, lowest);
        const std::uint64_t ibit = std::uint64_t{1} << i;
        for (std::uint64_t b = 0; b < count; ++b) {
            if (b & ibit)
                continue;
            const double mb = marginal(f, b, i, tolerance);
            // pairs already satisfying the ratio-1 inequality within tolerance cannot lower it
            if (mb > tolerance && lowest[b] < mb - tolerance)
                ratio = std::min(ratio, lowest[b] / mb);
        }
    }
    return ratio;
}

double weak_dr_supermodularity_ratio(const TabularSetFunction& f, double tolerance)
{
    check_weak_dr_size(f.n());
    const std::uint64_t count = std::uint64_t{1} << f.n();
    double ratio = 1.0;
    std::vector<double> highest;
    for (int i = 0; i < f.n(); ++i) {
        subset_extremum(f, i, tolerance, Extremum::max, highest);
        const std::uint64_t ibit = std::uint64_t{1} << i;
        for (std::uint64_t b = 0; b < count; ++b) {
            if (b & ibit)
                continue;
            const double mb = marginal(f, b, i, tolerance);
            if (highest[b] > tolerance && mb < highest[b] - tolerance)
                ratio = std::min(ratio, mb / highest[b]);
        }
    }
    return ratio;
}

WeakDRParams estimate_weak_dr(const DecomposedCost& c)
{
    check_weak_dr_size(c.n);
    const double tol = monotone_tolerance(c);
    const auto fbar = TabularSetFunction::from_oracle(c.n, c.fbar);
    const auto funder = TabularSetFunction::from_oracle(c.n, c.funder);
    return {weak_dr_submodularity_ratio(fbar, tol), weak_dr_supermodularity_ratio(funder, tol)};
}

Optimum offline_optimum(std::span<const DecomposedCost> costs)
{
    if (costs.empty())
        throw InvalidArgument("offline_optimum needs at least one cost");
    const int n = costs.front().n;
    for (const auto& c : costs)
        if (c.n != n)
            throw InvalidArgument("offline_optimum: costs disagree on ground-set size");
    if (n > kMaxEnumerableSize)
        throw CapacityError("offline_optimum limited to n <= " + std::to_string(kMaxEnumerableSize));

    const std::uint64_t count = std::uint64_t{1} << n;
    Optimum best{Subset::empty(n), std::numeric_limits<double>::infinity()};
    for (std::uint64_t m = 0; m < count; ++m) {
        const Subset s(n, m);
        double total = 0.0;
        for (const auto& c : costs)
            total += eval(c, s);
        if (total < best.value)
            best = {s, total};
    }
    return best;
}

double comparator_value(std::span<const DecomposedCost> costs, const Subset& s, const WeakDRParams& p)
{
    if (!(p.alpha > 0.0))
        throw InvalidArgument("comparator_value needs alpha > 0");
    double total = 0.0;
    for (const auto& c : costs)
        total += c.fbar(s) / p.alpha - p.beta * c.funder(s);
    return total;
}

} // namespace nsmin
