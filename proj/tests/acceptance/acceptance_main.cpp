// Acceptance suite: one PASS/FAIL line per primary criterion.
//
//   acceptance [--only N[,N...]]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nsmin/commands.hpp"
#include "nsmin/costs.hpp"
#include "nsmin/delay.hpp"
#include "nsmin/engine.hpp"
#include "nsmin/learners.hpp"
#include "nsmin/lovasz.hpp"
#include "nsmin/rng.hpp"
#include "nsmin/sparse.hpp"

using namespace nsmin;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---------------------------------------------------------------- fixtures

TabularSetFunction random_monotone(int n, RngStream& rng)
{
    TabularSetFunction f(n);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        double base = 0.0;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1)
                base = std::max(base, f.at(m & ~(std::uint64_t{1} << i)));
        f.at(m) = base + rng.uniform();
    }
    return f;
}

// A mix of shapes: arbitrary monotone, concave and convex transforms of modular sums.
TabularSetFunction random_part(int n, RngStream& rng)
{
    const int shape = static_cast<int>(rng.uniform() * 3);
    if (shape == 0)
        return random_monotone(n, rng);
    std::vector<double> w(n);
    for (double& x : w)
        x = rng.uniform(0.05, 1.0);
    const double power = shape == 1 ? rng.uniform(0.3, 1.0) : rng.uniform(1.0, 2.5);
    return TabularSetFunction::from_oracle(n, [&](const Subset& s) {
        double sum = 0.0;
        for (int e : s.elements())
            sum += w[e - 1];
        return std::pow(sum, power);
    });
}

Point random_point(int n, RngStream& rng)
{
    Point x(n);
    for (int i = 0; i < n; ++i)
        x(i) = rng.uniform();
    // occasional ties and faces of the cube
    if (n >= 2 && rng.uniform() < 0.2)
        x(1) = x(0);
    if (rng.uniform() < 0.1)
        x(0) = rng.uniform() < 0.5 ? 0.0 : 1.0;
    return x;
}

// Lovasz value from the lambda-weighted sum over a freshly sorted chain.
double lambda_sum(const DecomposedCost& c, const Point& x)
{
    const int n = static_cast<int>(x.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x(a) > x(b); });
    double total = 0.0, prev = 1.0;
    std::uint64_t mask = 0;
    for (int i = 0; i <= n; ++i) {
        const double next = i < n ? x(order[i]) : 0.0;
        total += (prev - next) * (c.fbar(Subset(n, mask)) - c.funder(Subset(n, mask)));
        if (i < n)
            mask |= std::uint64_t{1} << order[i];
        prev = next;
    }
    return total;
}

// min ||A_S x - y||^2 by Gaussian elimination on the normal equations.
double normal_equations_value(const RoundData& rd, const Subset& s)
{
    const auto cols = s.elements();
    const int k = static_cast<int>(cols.size());
    const int m = static_cast<int>(rd.y.size());
    double yy = 0.0;
    for (int r = 0; r < m; ++r)
        yy += rd.y(r) * rd.y(r);
    if (k == 0)
        return yy;
    std::vector<std::vector<double>> G(k, std::vector<double>(k + 1, 0.0));
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b)
            for (int r = 0; r < m; ++r)
                G[a][b] += rd.A(r, cols[a] - 1) * rd.A(r, cols[b] - 1);
        for (int r = 0; r < m; ++r)
            G[a][k] += rd.A(r, cols[a] - 1) * rd.y(r);
    }
    std::vector<double> rhs(k);
    for (int a = 0; a < k; ++a)
        rhs[a] = G[a][k];
    for (int p = 0; p < k; ++p) {
        int piv = p;
        for (int r = p + 1; r < k; ++r)
            if (std::abs(G[r][p]) > std::abs(G[piv][p]))
                piv = r;
        std::swap(G[p], G[piv]);
        for (int r = p + 1; r < k; ++r) {
            const double f = G[r][p] / G[p][p];
            for (int c = p; c <= k; ++c)
                G[r][c] -= f * G[p][c];
        }
    }
    std::vector<double> x(k);
    for (int p = k - 1; p >= 0; --p) {
        double v = G[p][k];
        for (int c = p + 1; c < k; ++c)
            v -= G[p][c] * x[c];
        x[p] = v / G[p][p];
    }
    // at the optimum, ||Ax - y||^2 = ||y||^2 - x . A^T y
    double fit = 0.0;
    for (int a = 0; a < k; ++a)
        fit += x[a] * rhs[a];
    return yy - fit;
}

// ---------------------------------------------------------------- 1

Verdict vertex_consistency()
{
    RngStream rng(101);
    double worst = 0.0;
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 7;
        const DecomposedCost c = make_cost(random_part(n, rng), random_part(n, rng));
        for (const Subset& s : enumerate_subsets(n)) {
            worst = std::max(worst, std::abs(lovasz_value(c, characteristic_vector(s, n)) - eval(c, s)));
            ++checked;
        }
    }
    return {worst <= 1e-12, fmt("200 costs, n in 2..8, %d vertices, max |f_L(chi_S) - f(S)| = %.3g (tol 1e-12)",
                                checked, worst)};
}

// ---------------------------------------------------------------- 2

Verdict subgradient_structure()
{
    RngStream rng(202);
    double worst_dot = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 10;
        const DecomposedCost c = make_cost(random_part(n, rng), random_part(n, rng));
        const Point x = random_point(n, rng);
        worst_dot = std::max(worst_dot, std::abs(subgradient(c, x).dot(x) - lambda_sum(c, x)));
    }

    double worst_excess = -std::numeric_limits<double>::infinity();
    double min_alpha = 1.0, min_beta = 1.0;
    int sets = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 6;
        const TabularSetFunction fbar = random_part(n, rng), funder = random_part(n, rng);
        const DecomposedCost c = make_cost(fbar, funder);
        const WeakDRParams p = estimate_weak_dr(c);
        min_alpha = std::min(min_alpha, p.alpha);
        min_beta = std::min(min_beta, p.beta);
        for (int rep = 0; rep < 5; ++rep) {
            const Vector g = subgradient(c, random_point(n, rng));
            for (const Subset& a : enumerate_subsets(n)) {
                double ga = 0.0;
                for (int e : a.elements())
                    ga += g(e - 1);
                worst_excess = std::max(worst_excess, ga - (fbar(a) / p.alpha - p.beta * funder(a)));
                ++sets;
            }
        }
    }
    const bool pass = worst_dot <= 1e-9 && worst_excess <= 1e-9;
    return {pass, fmt("g.x vs f_L over 1000 pairs: max err %.3g (tol 1e-9); g(A) - bound over %d sets, n <= 6, "
                      "min alpha %.3g, min beta %.3g: max excess %.3g (tol 1e-9)",
                      worst_dot, sets, min_alpha, min_beta, worst_excess)};
}

// ---------------------------------------------------------------- 3

Verdict gradient_bound()
{
    RngStream rng(303);
    double worst_fixture = -1e300;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 8;
        const DecomposedCost c = make_cost(random_part(n, rng), random_part(n, rng));
        const double L = bound_L(c).value;
        for (int rep = 0; rep < 10; ++rep)
            worst_fixture = std::max(worst_fixture, subgradient(c, random_point(n, rng)).lpNorm<1>() - L);
    }

    const SparseInstance probe = SparseInstance::make(10, 100, 2, 0.0, 0.01);
    const SparseCalibration cal = calibrate(probe, 7);
    SparseCostStream stream(SparseInstance::make(10, 100, 2, cal.lambda_reg, 0.01), 7);
    double worst_sparse = -1e300, max_ratio = 0.0;
    int over_calibrated = 0;
    for (int t = 0; t < 500; ++t) {
        const DecomposedCost c = stream.next();
        const double L = bound_L(c).value;
        const double g1 = subgradient(c, random_point(10, rng)).lpNorm<1>();
        worst_sparse = std::max(worst_sparse, g1 - L * (1 + 1e-12));
        max_ratio = std::max(max_ratio, g1 / L);
        over_calibrated += L > cal.L ? 1 : 0;
    }
    const bool pass = worst_fixture <= 0.0 && worst_sparse <= 0.0;
    return {pass, fmt("fixtures: max(||g||_1 - L) = %.3g; 500 sparse rounds (dim 10): max ||g||_1 / L_t = %.6f; "
                      "rounds with L_t above the calibrated L = %.4g: %d",
                      worst_fixture, max_ratio, cal.L, over_calibrated)};
}

// ---------------------------------------------------------------- 4

Verdict estimator_laws()
{
    RngStream rng(404);
    double worst_bias = 0.0, worst_second = 0.0, worst_single = 0.0;
    int cases = 0;
    for (double mu : {0.05, 0.3, 1.0})
        for (int n = 2; n <= 8; ++n)
            for (int rep = 0; rep < 20; ++rep) {
                const DecomposedCost c = make_cost(random_part(n, rng), random_part(n, rng));
                const double L = bound_L(c).value;
                const auto cd = chain_decompose(random_point(n, rng));
                const Vector vals = chain_values(c, cd);
                const Vector p = mixture_probs(cd, mu);
                Vector mean = Vector::Zero(n);
                double second = 0.0;
                for (int i = 0; i <= n; ++i) {
                    const Vector gh = bandit_estimate(p, i, vals(i), cd.pi);
                    mean += p(i) * gh;
                    second += p(i) * gh.squaredNorm();
                    const double hard = 2.0 * (n + 1) * (n + 1) * L * L / (mu * mu);
                    worst_single = std::max(worst_single, gh.squaredNorm() / hard);
                }
                worst_bias = std::max(worst_bias, (mean - subgradient(cd, vals)).cwiseAbs().maxCoeff());
                worst_second = std::max(worst_second, second / (8.0 * n * n * L * L / mu));
                ++cases;
            }
    const bool pass = worst_bias <= 1e-9 && worst_second <= 1.0 && worst_single <= 1.0;
    return {pass, fmt("%d exact enumerations, mu in {0.05,0.3,1}, n in 2..8: max |E[ghat]-g| = %.3g (tol 1e-9); "
                      "max E||ghat||^2 / (8n^2L^2/mu) = %.4f; max ||ghat||^2 / (2(n+1)^2L^2/mu^2) = %.4f",
                      cases, worst_bias, worst_second, worst_single)};
}

// ---------------------------------------------------------------- 5

DecomposedCost delay_fixture()
{
    RngStream rng(505);
    return make_cost(random_part(6, rng), random_part(6, rng));
}

RunResult delay_run(Algorithm a, const DelaySchedule& d, int T, std::uint64_t seed)
{
    ScaledCostStream stream(delay_fixture(), 0.3, seed);
    RunSettings s;
    s.algorithm = a;
    s.T = T;
    s.schedule = {StepMode::fixed_horizon, stream.max_L(), 6, T, 0.0, 1.0};
    s.delay = d;
    s.track_regret = false;
    return run(s, stream, seed);
}

struct PoolAudit {
    bool each_eligible_once = true;
    bool none_ineligible = true;
    bool strictly_increasing = true;
    bool pops_minimum = true;
    bool at_most_once = true;
};

// Replays arrivals independently and compares against the trace.
PoolAudit audit(const RunResult& r, const DelaySchedule& d, int T)
{
    PoolAudit a;
    std::map<int, std::vector<int>> arrive;
    for (int s = 1; s <= T; ++s)
        if (s + d.delay_of(s) <= T)
            arrive[s + d.delay_of(s)].push_back(s);
    std::set<int> available, used;
    int last = 0;
    for (const auto& rec : r.trace) {
        for (int s : arrive[rec.t])
            available.insert(s);
        if (!rec.consumed) {
            if (!available.empty())
                a.pops_minimum = false;
            continue;
        }
        const int q = *rec.consumed;
        if (available.empty() || *available.begin() != q)
            a.pops_minimum = false;
        if (q + d.delay_of(q) > T)
            a.none_ineligible = false;
        if (!used.insert(q).second)
            a.at_most_once = false;
        if (q <= last)
            a.strictly_increasing = false;
        last = q;
        available.erase(q);
    }
    for (int s = 1; s <= T; ++s)
        if (s + d.delay_of(s) <= T && !used.count(s))
            a.each_eligible_once = false;
    return a;
}

bool same_trace(const RunResult& a, const RunResult& b)
{
    if (a.trace.size() != b.trace.size() || a.final_state.x != b.final_state.x)
        return false;
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        const auto& x = a.trace[i];
        const auto& y = b.trace[i];
        if (x.chosen != y.chosen || x.loss != y.loss || x.sampled_index != y.sampled_index || x.eta != y.eta ||
            x.mu != y.mu || x.consumed != y.consumed)
            return false;
    }
    return true;
}

Verdict delay_pool(std::vector<std::string>& info)
{
    const int T = 2000;
    RngStream rng(5050);
    int bad_once = 0, bad_order = 0, bad_inelig = 0, bad_min = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const DelaySchedule d = trial % 2 == 0
                                    ? DelaySchedule::constant(static_cast<int>(rng.uniform() * 2500))
                                    : DelaySchedule::power(rng.uniform(0.5, 20.0), rng.uniform(0.0, 0.95));
        const Algorithm a = trial % 4 < 2 ? Algorithm::doagd : Algorithm::dbagd;
        const PoolAudit au = audit(delay_run(a, d, T, 1 + trial), d, T);
        bad_once += !(au.each_eligible_once && au.at_most_once);
        bad_order += !au.strictly_increasing;
        bad_inelig += !au.none_ineligible;
        bad_min += !au.pops_minimum;
    }

    int identical = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        identical += same_trace(delay_run(Algorithm::oagd, DelaySchedule::none(), T, seed),
                                delay_run(Algorithm::doagd, DelaySchedule::none(), T, seed));
        identical += same_trace(delay_run(Algorithm::bagd, DelaySchedule::none(), T, seed),
                                delay_run(Algorithm::dbagd, DelaySchedule::none(), T, seed));
    }

    // Arbitrary per-round delays: the pool rule still holds, the literal order and
    // exactly-once claims do not in general.
    int lit_once = 0, lit_order = 0, rule_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> ds(T);
        for (int& v : ds)
            v = static_cast<int>(rng.uniform() * 61);
        const DelaySchedule d = DelaySchedule::from_values(ds, "random");
        const PoolAudit au = audit(delay_run(Algorithm::doagd, d, T, 900 + trial), d, T);
        lit_once += au.each_eligible_once;
        lit_order += au.strictly_increasing;
        rule_ok += au.at_most_once && au.none_ineligible && au.pops_minimum;
    }
    info.push_back(fmt("[INFO] 5b i.i.d. delays U{0..60}, 100 schedules, T=2000: pool pops the oldest available "
                       "origin, at most once, never after T in %d/100; every eligible origin consumed in %d/100; "
                       "consumed origins strictly increasing in %d/100",
                       rule_ok, lit_once, lit_order));

    const bool pass = bad_once == 0 && bad_order == 0 && bad_inelig == 0 && bad_min == 0 && identical == 20;
    return {pass, fmt("100 schedules (constant d in [0,2500), power c in [0.5,20), gamma in [0,0.95)), T=2000: "
                      "exactly-once failures %d, order failures %d, late consumptions %d, non-minimum pops %d; "
                      "none-schedule traces identical %d/20",
                      bad_once, bad_order, bad_inelig, bad_min, identical)};
}

// ---------------------------------------------------------------- 6

DecomposedCost sublinear_fixture()
{
    const double v[8] = {1.0, 0.8, 1.2, 0.9, 1.1, 0.7, 1.3, 1.0};
    const double u[8] = {1.6, 1.5, 1.4, 0.2, 0.3, 0.1, 0.25, 0.15};
    const auto sum = [](const double* w, const Subset& s) {
        double acc = 0.0;
        for (int e : s.elements())
            acc += w[e - 1];
        return acc;
    };
    const auto fbar = TabularSetFunction::from_oracle(8, [&](const Subset& s) {
        const double a = sum(v, s);
        return 1.5 * std::sqrt(a) + 0.04 * a * a;
    });
    const auto funder = TabularSetFunction::from_oracle(8, [&](const Subset& s) {
        const double b = sum(u, s);
        return b + 0.3 * std::sqrt(b);
    });
    return make_cost(fbar, funder);
}

Verdict sublinearity()
{
    const DecomposedCost base = sublinear_fixture();
    const WeakDRParams p = estimate_weak_dr(base);
    const std::vector<DecomposedCost> one{base};
    const Optimum opt = offline_optimum(one);

    std::map<int, std::pair<double, double>> per_round; // T -> (mean R_ab/T, mean R/T)
    for (int T : {5000, 20000}) {
        double ab = 0.0, st = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            ScaledCostStream stream(base, 0.5, seed);
            RunSettings s;
            s.algorithm = Algorithm::oagd;
            s.T = T;
            s.schedule = {StepMode::fixed_horizon, stream.max_L(), 8, T, 0.0, 1.0};
            s.checkpoints = 1;
            const RunResult r = run(s, stream, seed);
            const RegretReport rep = regret_report(r, p, AlphaBetaSource::bruteforce);
            ab += rep.ab_regret / T;
            st += rep.standard_regret / T;
        }
        per_round[T] = {ab / 10, st / 10};
    }
    const auto [ab5, st5] = per_round[5000];
    const auto [ab20, st20] = per_round[20000];
    const bool literal = ab20 <= 0.6 * ab5;
    const bool standard = st20 <= 0.6 * st5;
    return {literal && standard,
            fmt("n=8, S*=%s, alpha=%.4f beta=%.4f, OAGD, 10 seeds: mean R_ab/T at T=20000 %.5g vs 0.6 x %.5g at T=5000 "
                "= %.5g; mean R/T %.5g -> %.5g (ratio %.3f, need <= 0.6)",
                opt.set.to_hex().c_str(), p.alpha, p.beta, ab20, ab5, 0.6 * ab5, st5, st20, st20 / st5)};
}

// ---------------------------------------------------------------- 7, 8, 9

RunConfig sparse_config()
{
    return parse_config(R"({
      "algorithm": "oagd", "T": 10000,
      "cost": {"kind": "sparse_learning", "dim": 10, "samples_per_round": 100, "k": 2, "noise_sd": 0.01},
      "alpha_beta": "bruteforce",
      "checkpoints": 20
    })");
}

class SparseRuns {
public:
    const RegretReport& get(Algorithm a, int d, double mult, std::uint64_t seed)
    {
        const RunCell cell{a, d == 0 ? DelaySchedule::none() : DelaySchedule::constant(d), mult, seed};
        const std::string id = make_run_id(cell);
        auto it = cache_.find(id);
        if (it == cache_.end())
            it = cache_.emplace(id, execute_cell(cfg_, cell).report).first;
        return it->second;
    }
    std::size_t runs() const { return cache_.size(); }

private:
    RunConfig cfg_ = sparse_config();
    std::map<std::string, RegretReport> cache_;
};

double mean_of(SparseRuns& runs, Algorithm a, int d, double mult, int seeds, bool ab)
{
    double total = 0.0;
    for (int s = 1; s <= seeds; ++s) {
        const RegretReport& r = runs.get(a, d, mult, s);
        total += ab ? r.ab_regret : r.standard_regret;
    }
    return total / seeds;
}

Verdict delay_ordering(SparseRuns& runs)
{
    std::string detail;
    bool pass = true;
    for (Algorithm a : {Algorithm::doagd, Algorithm::dbagd}) {
        const double m500 = mean_of(runs, a, 500, 1.0, 10, true);
        const double m1000 = mean_of(runs, a, 1000, 1.0, 10, true);
        const double m2000 = mean_of(runs, a, 2000, 1.0, 10, true);
        const bool ok = m500 <= m1000 && m1000 <= m2000;
        pass = pass && ok;
        detail += fmt("%s%s mean R_ab d=500/1000/2000: %.6g / %.6g / %.6g", detail.empty() ? "" : "; ",
                      std::string(to_string(a)).c_str(), m500, m1000, m2000);
    }
    const RegretReport& any = runs.get(Algorithm::doagd, 500, 1.0, 1);
    detail += fmt(" (dim 10, m 100, k 2, T 1e4, 10 paired seeds, alpha=%.4f beta=%.4f for seed 1)", any.params.alpha,
                  any.params.beta);
    return {pass, detail};
}

Verdict full_vs_bandit(SparseRuns& runs)
{
    const double doagd = mean_of(runs, Algorithm::doagd, 500, 1.0, 10, true);
    const double dbagd = mean_of(runs, Algorithm::dbagd, 500, 1.0, 10, true);
    const double oagd = mean_of(runs, Algorithm::oagd, 0, 1.0, 10, true);
    const double bagd = mean_of(runs, Algorithm::bagd, 0, 1.0, 10, true);
    const double s_doagd = mean_of(runs, Algorithm::doagd, 500, 1.0, 10, false);
    const double s_dbagd = mean_of(runs, Algorithm::dbagd, 500, 1.0, 10, false);
    const double s_oagd = mean_of(runs, Algorithm::oagd, 0, 1.0, 10, false);
    const double s_bagd = mean_of(runs, Algorithm::bagd, 0, 1.0, 10, false);
    const bool pass = doagd <= dbagd && oagd <= bagd;
    return {pass, fmt("mean R_ab: doagd %.6g <= dbagd %.6g (d=500); oagd %.6g <= bagd %.6g (d=0); "
                      "standard R: %.6g, %.6g, %.6g, %.6g",
                      doagd, dbagd, oagd, bagd, s_doagd, s_dbagd, s_oagd, s_bagd)};
}

Verdict step_robustness(SparseRuns& runs)
{
    double lo = 1e300, hi = 0.0;
    int completed = 0;
    std::string detail;
    for (Algorithm a : {Algorithm::oagd, Algorithm::bagd, Algorithm::doagd, Algorithm::dbagd}) {
        const int d = is_delayed(a) ? 500 : 0;
        double alo = 1e300, ahi = 0.0;
        for (int seed = 1; seed <= 5; ++seed) {
            const double ref = runs.get(a, d, 1.0, seed).standard_regret;
            ++completed;
            for (double m : {0.5, 0.2}) {
                const double r = runs.get(a, d, m, seed).standard_regret / ref;
                ++completed;
                alo = std::min(alo, r);
                ahi = std::max(ahi, r);
            }
        }
        lo = std::min(lo, alo);
        hi = std::max(hi, ahi);
        detail += fmt("%s%s [%.3f, %.3f]", detail.empty() ? "" : ", ", std::string(to_string(a)).c_str(), alo, ahi);
    }
    const bool pass = completed == 60 && lo >= 1.0 / 3.0 && hi <= 3.0;
    return {pass, fmt("%d/60 runs complete; per-seed R(m)/R(1) for m in {1/2, 1/5}, 5 seeds, d=500 for delayed "
                      "kinds: %s; overall [%.3f, %.3f] (band [1/3, 3])",
                      completed, detail.c_str(), lo, hi)};
}

// ---------------------------------------------------------------- 10

Verdict sparse_structure()
{
    RngStream rng(1010);
    double worst_ls = 0.0, worst_drop = 0.0, min_h = 0.0;
    int instances = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 1 + trial % 8;
        const int m = dim + static_cast<int>(rng.uniform() * 60);
        const int k = 1 + static_cast<int>(rng.uniform() * dim);
        const SparseInstance inst =
            SparseInstance::make(dim, m, k, 1.0, rng.uniform(0.0, 0.5), 1 + static_cast<int>(rng.uniform() * (dim - k + 1)));
        RngStream data(derive_seed(trial, kDataStream));
        const RoundData rd = gen_round_data(inst, data);
        std::vector<double> h(std::size_t{1} << dim);
        for (const Subset& s : enumerate_subsets(dim)) {
            h[s.bits()] = h_value(rd, s);
            min_h = std::min(min_h, h[s.bits()]);
            worst_ls = std::max(worst_ls, std::abs(restricted_ls_value(rd, s) - normal_equations_value(rd, s)));
        }
        for (std::uint64_t mask = 0; mask < h.size(); ++mask)
            for (int i = 0; i < dim; ++i)
                worst_drop = std::max(worst_drop, h[mask] - h[mask | (std::uint64_t{1} << i)]);
        ++instances;
    }
    const bool pass = min_h >= 0.0 && worst_drop <= 1e-9 && worst_ls <= 1e-8;
    return {pass, fmt("%d instances, dim <= 8, all subsets: min h = %.3g; max h(S) - h(S+i) = %.3g (tol 1e-9); "
                      "max |LS - normal equations| = %.3g (tol 1e-8)",
                      instances, min_h, worst_drop, worst_ls)};
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> only;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--only") {
            std::stringstream ss(argv[i + 1]);
            std::string tok;
            while (std::getline(ss, tok, ','))
                only.insert(std::stoi(tok));
        }

    SparseRuns sparse;
    std::vector<std::string> info;
    struct Criterion {
        int id;
        const char* name;
        double limit;
        std::function<Verdict()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "vertex consistency", 10, vertex_consistency},
        {2, "subgradient identity and chain bound", 60, subgradient_structure},
        {3, "subgradient l1 bound", 30, gradient_bound},
        {4, "bandit estimator laws", 10, estimator_laws},
        {5, "delay pool conservation and order", 30, [&] { return delay_pool(info); }},
        {6, "sublinear regret trend", 120, sublinearity},
        {7, "delay ordering on sparse learning", 900, [&] { return delay_ordering(sparse); }},
        {8, "full information vs bandit", 900, [&] { return full_vs_bandit(sparse); }},
        {9, "step-size robustness", 900, [&] { return step_robustness(sparse); }},
        {10, "sparse cost structure", 60, sparse_structure},
    };

    // 7 and 8 share one budget
    double shared_78 = 0.0;
    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        double budget_used = secs;
        if (c.id == 7 || c.id == 8) {
            shared_78 += secs;
            budget_used = shared_78;
        }
        const bool in_time = budget_used < c.limit;
        const bool pass = v.pass && in_time;
        failures += !pass;
        std::printf("[%s] criterion %d (%s): %s | %.1f s%s (limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    v.detail.c_str(), secs, (c.id == 8 ? " (7+8 cumulative " + fmt("%.1f", shared_78) + " s)" : std::string()).c_str(),
                    c.limit);
        for (const auto& line : info)
            std::printf("%s\n", line.c_str());
        info.clear();
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
