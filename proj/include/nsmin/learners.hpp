#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "nsmin/delay.hpp"
#include "nsmin/ground.hpp"

namespace nsmin {

enum class Algorithm { oagd, bagd, doagd, dbagd };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
inline bool is_bandit(Algorithm a) { return a == Algorithm::bagd || a == Algorithm::dbagd; }
inline bool is_delayed(Algorithm a) { return a == Algorithm::doagd || a == Algorithm::dbagd; }

enum class StepMode {
    fixed_horizon,  ///< constants tuned to a known horizon T
    anytime_delayed ///< per-round rates tuned to the delay exponent gamma
};

std::string_view to_string(StepMode m);
StepMode parse_step_mode(std::string_view name);

struct StepSchedule {
    StepMode mode = StepMode::fixed_horizon;
    double L = 1.0;
    int n = 1;
    int horizon = 1;
    double gamma = 0.0;
    /// Scales eta only (step-size robustness studies); mu is unaffected.
    double multiplier = 1.0;
};

/// Full information: sqrt(n)/(L sqrt(T)), or sqrt(n)/(L t^((1+gamma)/2)).
double step_size_full(const StepSchedule& sched, int t);

struct BanditStep {
    double eta = 0.0;
    double mu = 0.0;
    bool mu_clamped = false;
};

/// Bandit: (1/(L T^(2/3)), n/T^(1/3)), or (1/(L t^((2+gamma)/3)), n/t^((1-gamma)/3)).
/// mu is clamped to at most 1 and the clamp is reported.
BanditStep step_size_bandit(const StepSchedule& sched, int t);

/// Euclidean projection onto [0,1]^n (componentwise clamp).
template <typename Derived>
Point project_hypercube(const Eigen::MatrixBase<Derived>& v)
{
    return v.derived().cwiseMax(0.0).cwiseMin(1.0);
}

/// Importance-weighted gradient estimate from a single observed loss.
///
/// fhat has the single nonzero observed / probs[i*] at i*, and
/// ghat_pi(i) = fhat_i - fhat_{i-1}. `pi` holds 1-indexed elements.
Vector bandit_estimate(const Vector& probs, int sampled_index, double observed, std::span<const int> pi);

struct LearnerState {
    Point x;
    int t = 1;
    Algorithm kind = Algorithm::oagd;
    StepSchedule schedule;
};

/// Default x^1 is the box center.
LearnerState make_learner(Algorithm kind, const StepSchedule& schedule, std::optional<Point> x1 = {});

/// x <- P(x - eta g); t advances.
LearnerState full_info_step(LearnerState state, const Vector& g, double eta);

/// Pops the oldest pooled record and steps with it; leaves x unchanged (q_t = infinity)
/// when the pool is empty. Returns the consumed origin.
std::optional<int> delayed_step(LearnerState& state, FeedbackPool& pool, double eta);

} // namespace nsmin
