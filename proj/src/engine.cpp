#include "nsmin/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nsmin/errors.hpp"
#include "nsmin/lovasz.hpp"

namespace nsmin {

ScaledCostStream::ScaledCostStream(const DecomposedCost& base, double scale_noise, std::uint64_t seed)
    : n_(base.n),
      fbar_(std::make_shared<const TabularSetFunction>(TabularSetFunction::from_oracle(base.n, base.fbar))),
      funder_(std::make_shared<const TabularSetFunction>(TabularSetFunction::from_oracle(base.n, base.funder))),
      noise_(scale_noise),
      rng_(seed, kDataStream)
{
    if (!(scale_noise >= 0.0 && scale_noise < 1.0))
        throw InvalidArgument("scale noise must lie in [0, 1)");
}

DecomposedCost ScaledCostStream::next()
{
    const double a = rng_.uniform(1.0 - noise_, 1.0 + noise_);
    const double b = rng_.uniform(1.0 - noise_, 1.0 + noise_);
    DecomposedCost c;
    c.n = n_;
    c.fbar = [f = fbar_, a](const Subset& s) { return a * (*f)(s); };
    c.funder = [f = funder_, b](const Subset& s) { return b * (*f)(s); };
    return c;
}

double ScaledCostStream::max_L() const
{
    const auto full = full_mask(n_);
    return (1.0 + noise_) * (fbar_->at(full) + funder_->at(full));
}

HindsightAccumulator::HindsightAccumulator(int n) : n_(n)
{
    if (n > kMaxEnumerableSize)
        throw CapacityError("regret accounting needs n <= " + std::to_string(kMaxEnumerableSize) +
                            ", got n = " + std::to_string(n));
    fbar_.assign(std::size_t{1} << n, 0.0);
    funder_.assign(std::size_t{1} << n, 0.0);
}

void HindsightAccumulator::add(const DecomposedCost& c)
{
    if (c.n != n_)
        throw InvalidArgument("accumulator ground-set size mismatch");
    for (std::uint64_t m = 0; m < fbar_.size(); ++m) {
        const Subset s(n_, m);
        fbar_[m] += c.fbar(s);
        funder_[m] += c.funder(s);
    }
    ++rounds_;
}

Optimum HindsightAccumulator::best() const
{
    Optimum best{Subset::empty(n_), std::numeric_limits<double>::infinity()};
    for (std::uint64_t m = 0; m < fbar_.size(); ++m) {
        const double v = fbar_[m] - funder_[m];
        if (v < best.value)
            best = {Subset(n_, m), v};
    }
    return best;
}

CheckpointSnapshot HindsightAccumulator::snapshot() const
{
    const Optimum opt = best();
    return {rounds_, opt.set, opt.value, fbar_[opt.set.bits()], funder_[opt.set.bits()]};
}

std::vector<int> checkpoint_rounds(int T, int count)
{
    std::vector<int> out;
    if (T < 1)
        return out;
    count = std::max(count, 1);
    for (int k = 1; k <= count; ++k) {
        const int t = static_cast<int>((static_cast<long long>(k) * T) / count);
        if (t >= 1 && (out.empty() || out.back() != t))
            out.push_back(t);
    }
    if (out.empty() || out.back() != T)
        out.push_back(T);
    return out;
}

namespace {

[[noreturn]] void rethrow_with_round(int t)
{
    const std::string ctx = "round " + std::to_string(t) + ": ";
    try {
        throw;
    } catch (const CapacityError& e) {
        throw CapacityError(ctx + e.what());
    } catch (const IntegrityError& e) {
        throw IntegrityError(ctx + e.what());
    } catch (const OutOfRange& e) {
        throw OutOfRange(ctx + e.what());
    } catch (const DomainError& e) {
        throw DomainError(ctx + e.what());
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(ctx + e.what());
    } catch (const std::exception& e) {
        throw Error(ctx + e.what());
    }
}

} // namespace

RunResult run(const RunSettings& settings, CostStream& stream, std::uint64_t seed)
{
    const int n = stream.n();
    if (settings.T < 1)
        throw InvalidArgument("horizon T must be >= 1");
    if (settings.schedule.n != n)
        throw InvalidArgument("step schedule built for n = " + std::to_string(settings.schedule.n) +
                              ", stream has n = " + std::to_string(n));

    const Algorithm kind = settings.algorithm;
    const bool bandit = is_bandit(kind);
    const bool delayed = is_delayed(kind);

    RunResult result;
    result.algorithm = kind;
    result.seed = seed;
    result.trace.reserve(settings.T);
    if (settings.track_regret)
        result.accumulator.emplace(n);

    RngStream rng(seed, kLearnerStream);
    LearnerState state = make_learner(kind, settings.schedule, settings.x1);
    FeedbackPool pool;
    ArrivalBook book(settings.T);
    const std::vector<int> checkpoints = checkpoint_rounds(settings.T, settings.checkpoints);
    auto next_checkpoint = checkpoints.begin();

    for (int t = 1; t <= settings.T; ++t) {
        try {
            RoundRecord rec;
            rec.t = t;

            const ChainDecomposition cd = chain_decompose(state.x);
            double eta = 0.0;
            Vector probs;
            if (bandit) {
                const BanditStep step = step_size_bandit(settings.schedule, t);
                eta = step.eta;
                rec.mu = step.mu;
                rec.mu_clamped = step.mu_clamped;
                result.mu_clamped_rounds += step.mu_clamped ? 1 : 0;
                probs = mixture_probs(cd, step.mu);
            } else {
                eta = step_size_full(settings.schedule, t);
                probs = cd.lambdas;
            }
            rec.eta = eta;

            rec.sampled_index = sample_index(probs, rng.uniform());
            rec.chosen = cd.chain[rec.sampled_index];

            const DecomposedCost cost = stream.next();
            if (bound_L(cost).computed > settings.schedule.L)
                ++result.L_violations;

            Vector gradient;
            if (bandit) {
                rec.loss = eval(cost, rec.chosen);
                gradient = bandit_estimate(probs, rec.sampled_index, rec.loss, cd.pi);
            } else {
                const Vector values = chain_values(cost, cd);
                rec.loss = values(rec.sampled_index);
                gradient = subgradient(cd, values);
            }
            result.cumulative_loss += rec.loss;

            if (result.accumulator)
                result.accumulator->add(cost);

            if (delayed) {
                rec.delay = settings.delay.delay_of(t);
                book.schedule({t, std::move(gradient)}, rec.delay);
                for (auto& r : book.take(t))
                    pool.insert(std::move(r));
                rec.consumed = delayed_step(state, pool, eta);
            } else {
                state = full_info_step(std::move(state), gradient, eta);
                rec.consumed = t;
            }

            if (result.accumulator && next_checkpoint != checkpoints.end() && *next_checkpoint == t) {
                result.snapshots.push_back(result.accumulator->snapshot());
                ++next_checkpoint;
            }
            result.trace.push_back(std::move(rec));
        } catch (...) {
            rethrow_with_round(t);
        }
    }
    result.final_state = std::move(state);
    result.learner_draws = rng.counter();
    return result;
}

std::string_view to_string(AlphaBetaSource s)
{
    switch (s) {
    case AlphaBetaSource::config:
        return "config";
    case AlphaBetaSource::bruteforce:
        return "bruteforce";
    case AlphaBetaSource::submodular_default:
        return "submodular-default";
    }
    return "config";
}

RegretReport regret_report(const RunResult& result, const HindsightAccumulator& acc,
                           const WeakDRParams& params, AlphaBetaSource source)
{
    if (!(params.alpha > 0.0))
        throw InvalidArgument("regret report needs alpha > 0");
    const CheckpointSnapshot snap = acc.snapshot();
    RegretReport r;
    r.T = acc.rounds();
    r.cumulative_loss = result.cumulative_loss;
    r.hindsight_set = snap.hindsight_set;
    r.hindsight_value = snap.hindsight_value;
    r.standard_regret = result.cumulative_loss - snap.hindsight_value;
    r.ab_regret = result.cumulative_loss - (snap.fbar_sum / params.alpha - params.beta * snap.funder_sum);
    r.params = params;
    r.source = source;
    return r;
}

RegretReport regret_report(const RunResult& result, const WeakDRParams& params, AlphaBetaSource source)
{
    if (!result.accumulator)
        throw CapacityError("no hindsight accumulator: regret accounting requires n <= " +
                            std::to_string(kMaxEnumerableSize));
    return regret_report(result, *result.accumulator, params, source);
}

std::vector<CurvePoint> regret_curve(const RunResult& result, std::span<const CheckpointSnapshot> snapshots,
                                     const WeakDRParams& params)
{
    if (!(params.alpha > 0.0))
        throw InvalidArgument("regret curve needs alpha > 0");
    std::vector<CurvePoint> curve;
    curve.reserve(snapshots.size());
    double prefix_loss = 0.0;
    std::size_t next = 0;
    for (const auto& snap : snapshots) {
        if (snap.t < 1 || static_cast<std::size_t>(snap.t) > result.trace.size())
            throw InvalidArgument("snapshot at round " + std::to_string(snap.t) + " lies outside the trace");
        if (!curve.empty() && snap.t <= curve.back().t)
            throw InvalidArgument("snapshots must be strictly increasing in t");
        while (next < static_cast<std::size_t>(snap.t))
            prefix_loss += result.trace[next++].loss;
        curve.push_back({snap.t, prefix_loss - snap.hindsight_value,
                         prefix_loss - (snap.fbar_sum / params.alpha - params.beta * snap.funder_sum)});
    }
    return curve;
}

} // namespace nsmin
