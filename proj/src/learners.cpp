#include "nsmin/learners.hpp"

#include <cmath>
#include <string>

#include "nsmin/errors.hpp"

namespace nsmin {

std::string_view to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::oagd:
        return "oagd";
    case Algorithm::bagd:
        return "bagd";
    case Algorithm::doagd:
        return "doagd";
    case Algorithm::dbagd:
        return "dbagd";
    }
    return "oagd";
}

Algorithm parse_algorithm(std::string_view name)
{
    if (name == "oagd")
        return Algorithm::oagd;
    if (name == "bagd")
        return Algorithm::bagd;
    if (name == "doagd")
        return Algorithm::doagd;
    if (name == "dbagd" || name == "dbgd")
        return Algorithm::dbagd;
    throw InvalidArgument("unknown algorithm '" + std::string(name) +
                          "' (expected oagd, bagd, doagd or dbagd)");
}

std::string_view to_string(StepMode m)
{
    return m == StepMode::fixed_horizon ? "fixed" : "anytime";
}

StepMode parse_step_mode(std::string_view name)
{
    if (name == "fixed")
        return StepMode::fixed_horizon;
    if (name == "anytime")
        return StepMode::anytime_delayed;
    throw InvalidArgument("unknown step schedule '" + std::string(name) + "' (expected fixed or anytime)");
}

namespace {

void check_schedule(const StepSchedule& s, int t)
{
    if (!(s.L > 0.0))
        throw InvalidArgument("step schedule needs L > 0");
    if (t < 1)
        throw InvalidArgument("rounds start at 1");
    if (s.mode == StepMode::fixed_horizon && s.horizon < 1)
        throw InvalidArgument("fixed-horizon schedule needs T >= 1");
    if (s.mode == StepMode::anytime_delayed && !(s.gamma < 1.0))
        throw InvalidArgument("delay exponent gamma must be < 1");
}

} // namespace

double step_size_full(const StepSchedule& s, int t)
{
    check_schedule(s, t);
    const double root_n = std::sqrt(static_cast<double>(s.n));
    const double eta = s.mode == StepMode::fixed_horizon
                           ? root_n / (s.L * std::sqrt(static_cast<double>(s.horizon)))
                           : root_n / (s.L * std::pow(static_cast<double>(t), (1.0 + s.gamma) / 2.0));
    return s.multiplier * eta;
}

BanditStep step_size_bandit(const StepSchedule& s, int t)
{
    check_schedule(s, t);
    BanditStep out;
    if (s.mode == StepMode::fixed_horizon) {
        const double T = s.horizon;
        out.eta = 1.0 / (s.L * std::pow(T, 2.0 / 3.0));
        out.mu = s.n / std::cbrt(T);
    } else {
        const double tt = t;
        out.eta = 1.0 / (s.L * std::pow(tt, (2.0 + s.gamma) / 3.0));
        out.mu = s.n / std::pow(tt, (1.0 - s.gamma) / 3.0);
    }
    out.eta *= s.multiplier;
    if (out.mu > 1.0) {
        out.mu = 1.0;
        out.mu_clamped = true;
    }
    return out;
}

Vector bandit_estimate(const Vector& probs, int sampled_index, double observed, std::span<const int> pi)
{
    const int n = static_cast<int>(pi.size());
    if (probs.size() != n + 1)
        throw InvalidArgument("bandit_estimate: expected n + 1 probabilities");
    if (sampled_index < 0 || sampled_index > n)
        throw InvalidArgument("bandit_estimate: sampled index out of range");
    if (!(probs(sampled_index) > 0.0))
        throw InvalidArgument("bandit_estimate: zero probability at sampled index " +
                              std::to_string(sampled_index) + " (exploration floor violated)");

    const double fhat = observed / probs(sampled_index);
    Vector g = Vector::Zero(n);
    // fhat_i enters ghat_pi(i) with + and ghat_pi(i+1) with -.
    if (sampled_index >= 1)
        g(pi[sampled_index - 1] - 1) += fhat;
    if (sampled_index + 1 <= n)
        g(pi[sampled_index] - 1) -= fhat;
    return g;
}

LearnerState make_learner(Algorithm kind, const StepSchedule& schedule, std::optional<Point> x1)
{
    LearnerState s;
    s.kind = kind;
    s.schedule = schedule;
    if (x1) {
        if (x1->size() != schedule.n)
            throw InvalidArgument("initial point has dimension " + std::to_string(x1->size()) +
                                  ", expected " + std::to_string(schedule.n));
        if ((x1->array() < 0.0).any() || (x1->array() > 1.0).any())
            throw DomainError("initial point must lie in [0,1]^n");
        s.x = *x1;
    } else {
        s.x = Point::Constant(schedule.n, 0.5);
    }
    return s;
}

LearnerState full_info_step(LearnerState state, const Vector& g, double eta)
{
    if (g.size() != state.x.size())
        throw InvalidArgument("gradient dimension mismatch");
    state.x = project_hypercube(state.x - eta * g);
    ++state.t;
    return state;
}

std::optional<int> delayed_step(LearnerState& state, FeedbackPool& pool, double eta)
{
    auto record = pool.pop();
    if (!record) {
        ++state.t;
        return std::nullopt;
    }
    state = full_info_step(std::move(state), record->vector, eta);
    return record->origin_round;
}

} // namespace nsmin
