#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsmin/ground.hpp"

namespace nsmin {

using SetOracle = std::function<double(const Subset&)>;

/// Set function stored as 2^n values indexed by bitmask.
class TabularSetFunction {
public:
    TabularSetFunction() = default;
    explicit TabularSetFunction(int n);
    TabularSetFunction(int n, std::vector<double> values);

    static TabularSetFunction from_oracle(int n, const SetOracle& f);

    int n() const { return n_; }
    double operator()(const Subset& s) const { return values_[s.bits()]; }
    double at(std::uint64_t mask) const { return values_[mask]; }
    double& at(std::uint64_t mask) { return values_[mask]; }
    std::span<const double> values() const { return values_; }

    /// Text form: first line n, then 2^n lines "<hex mask> <value>".
    void write(std::ostream& os) const;
    static TabularSetFunction read(std::istream& is);
    void save(const std::filesystem::path& path) const;
    static TabularSetFunction load(const std::filesystem::path& path);

    SetOracle oracle() const;

private:
    int n_ = 0;
    std::vector<double> values_;
};

/// f(S) = fbar(S) - funder(S) with fbar alpha-weakly DR-submodular and funder
/// beta-weakly DR-supermodular, both normalized and nondecreasing.
struct DecomposedCost {
    int n = 0;
    SetOracle fbar;
    SetOracle funder;
    std::optional<double> L_hint;
};

struct WeakDRParams {
    double alpha = 1.0;
    double beta = 1.0;
};

SetOracle zero_function();
SetOracle modular_function(std::vector<double> weights);

DecomposedCost make_cost(const TabularSetFunction& fbar, const TabularSetFunction& funder);
/// Splits signed weights into fbar = positive part, funder = magnitude of the negative part.
DecomposedCost make_modular_cost(std::span<const double> weights);

/// fbar(S) - funder(S). Oracle exceptions are rethrown with the set attached.
double eval(const DecomposedCost& c, const Subset& s);

struct LBound {
    double value = 0.0;    ///< max(hint, computed) when a hint exists
    double computed = 0.0; ///< fbar([n]) + funder([n])
    bool violated = false; ///< computed exceeds the hint
};

LBound bound_L(const DecomposedCost& c);

/// Absolute slack used for monotonicity and marginal-sign decisions:
/// 1e-9 * max(1, |fbar([n])|, |funder([n])|).
double monotone_tolerance(const DecomposedCost& c);

struct CostViolation {
    enum class Part { fbar, funder };
    enum class Kind { normalization, monotonicity };

    Part part;
    Kind kind;
    Subset set;      ///< S (the smaller set for monotonicity)
    int element = 0; ///< i added to S; 0 for normalization
    double before = 0.0;
    double after = 0.0;

    std::string describe() const;
};

struct ValidationReport {
    std::vector<CostViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustive normalization and monotonicity check over all (S, i not in S).
ValidationReport validate_cost(const DecomposedCost& c);

/// min over A subset-of B, i not in B, f(i|B) > 0 of f(i|A) / f(i|B); 1 if no pair qualifies.
double weak_dr_submodularity_ratio(const TabularSetFunction& f, double tolerance = 0.0);
/// min over A subset-of B, i not in B, f(i|A) > 0 of f(i|B) / f(i|A); 1 if no pair qualifies.
double weak_dr_supermodularity_ratio(const TabularSetFunction& f, double tolerance = 0.0);

/// Brute-force (alpha, beta) of a decomposed cost. Guarded at n <= 14.
WeakDRParams estimate_weak_dr(const DecomposedCost& c);

inline constexpr int kMaxWeakDRSize = 14;

struct Optimum {
    Subset set;
    double value = 0.0;
};

/// argmin over S of sum_t f_t(S), smallest bitmask on ties.
Optimum offline_optimum(std::span<const DecomposedCost> costs);

/// sum_t (1/alpha) fbar_t(S) - beta funder_t(S).
double comparator_value(std::span<const DecomposedCost> costs, const Subset& s, const WeakDRParams& p);

} // namespace nsmin
