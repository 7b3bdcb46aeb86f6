#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nsmin/costs.hpp"
#include "nsmin/delay.hpp"
#include "nsmin/learners.hpp"
#include "nsmin/rng.hpp"

namespace nsmin {

/// Source of the adversary's per-round costs f_1, f_2, ...
class CostStream {
public:
    virtual ~CostStream() = default;
    virtual int n() const = 0;
    virtual DecomposedCost next() = 0;
};

/// i.i.d. stream around a fixed base cost: f_t = a_t fbar - b_t funder with
/// a_t, b_t uniform on [1 - s, 1 + s]. Scaling preserves normalization,
/// monotonicity and the weak-DR ratios, so the expected cost (and hence the
/// long-run optimum) is the base cost. Two data draws per round, always.
class ScaledCostStream : public CostStream {
public:
    ScaledCostStream(const DecomposedCost& base, double scale_noise, std::uint64_t seed);

    int n() const override { return n_; }
    DecomposedCost next() override;

    /// Largest possible fbar_t([n]) + funder_t([n]) over the stream.
    double max_L() const;

private:
    int n_;
    std::shared_ptr<const TabularSetFunction> fbar_;
    std::shared_ptr<const TabularSetFunction> funder_;
    double noise_;
    RngStream rng_;
};

struct RoundRecord {
    int t = 0;
    Subset chosen;
    double loss = 0.0;
    int sampled_index = 0;
    int delay = 0;
    std::optional<int> consumed; ///< q_t; empty when no update happened
    double eta = 0.0;
    std::optional<double> mu;    ///< bandit kinds only
    bool mu_clamped = false;
};

/// Reduced view of the hindsight accumulator at a checkpoint.
struct CheckpointSnapshot {
    int t = 0;
    Subset hindsight_set;
    double hindsight_value = 0.0; ///< sum_t f_t(S*_t)
    double fbar_sum = 0.0;        ///< sum_t fbar_t(S*_t)
    double funder_sum = 0.0;      ///< sum_t funder_t(S*_t)
};

/// Running sums of fbar_t and funder_t over every subset (n <= 20).
class HindsightAccumulator {
public:
    explicit HindsightAccumulator(int n);

    void add(const DecomposedCost& c);
    int n() const { return n_; }
    int rounds() const { return rounds_; }
    std::span<const double> fbar_sums() const { return fbar_; }
    std::span<const double> funder_sums() const { return funder_; }

    /// argmin_S sum_t f_t(S), smallest bitmask on ties.
    Optimum best() const;
    CheckpointSnapshot snapshot() const;

private:
    int n_;
    int rounds_ = 0;
    std::vector<double> fbar_;
    std::vector<double> funder_;
};

struct RunSettings {
    Algorithm algorithm = Algorithm::oagd;
    int T = 1;
    StepSchedule schedule;
    DelaySchedule delay;
    std::optional<Point> x1;
    int checkpoints = 200;
    bool track_regret = true;
};

struct RunResult {
    Algorithm algorithm = Algorithm::oagd;
    std::uint64_t seed = 0;
    std::vector<RoundRecord> trace;
    LearnerState final_state;
    std::optional<HindsightAccumulator> accumulator;
    std::vector<CheckpointSnapshot> snapshots;
    double cumulative_loss = 0.0;
    int L_violations = 0;      ///< rounds with fbar_t([n]) + funder_t([n]) > L
    int mu_clamped_rounds = 0;
    std::uint64_t learner_draws = 0;
};

/// 200 evenly spaced rounds by default, always including T.
std::vector<int> checkpoint_rounds(int T, int count);

/// Plays T rounds of the selected learner against `stream`.
/// Learner randomness comes from RngStream(seed, kLearnerStream): one uniform per round.
RunResult run(const RunSettings& settings, CostStream& stream, std::uint64_t seed);

enum class AlphaBetaSource { config, bruteforce, submodular_default };
std::string_view to_string(AlphaBetaSource s);

struct RegretReport {
    int T = 0;
    double cumulative_loss = 0.0;
    Subset hindsight_set;
    double hindsight_value = 0.0;
    double standard_regret = 0.0;
    double ab_regret = 0.0;
    WeakDRParams params;
    AlphaBetaSource source = AlphaBetaSource::submodular_default;
};

RegretReport regret_report(const RunResult& result, const HindsightAccumulator& acc,
                           const WeakDRParams& params, AlphaBetaSource source);
/// Uses the run's own accumulator; CapacityError when the run did not keep one.
RegretReport regret_report(const RunResult& result, const WeakDRParams& params, AlphaBetaSource source);

struct CurvePoint {
    int t = 0;
    double standard_regret = 0.0;
    double ab_regret = 0.0;
};

/// Prefix regrets against the prefix optimum S*_t recorded at each snapshot.
std::vector<CurvePoint> regret_curve(const RunResult& result, std::span<const CheckpointSnapshot> snapshots,
                                     const WeakDRParams& params);

} // namespace nsmin
