#include "nsmin/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "nsmin/errors.hpp"
#include "nsmin/sparse.hpp"

namespace nsmin {

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e))
        return kExitConfig;
    if (dynamic_cast<const CapacityError*>(&e))
        return kExitCapacity;
    return kExitRuntime;
}

namespace {

DecomposedCost base_cost(const CostConfig& cost)
{
    if (cost.kind == CostConfig::Kind::modular_stream)
        return make_modular_cost(cost.weights);
    const auto fbar = TabularSetFunction::load(cost.fbar_path);
    const auto funder =
        cost.funder_path ? TabularSetFunction::load(*cost.funder_path) : TabularSetFunction(fbar.n());
    return make_cost(fbar, funder);
}

SparseInstance sparse_instance(const CostConfig& cost, double lambda_reg)
{
    return SparseInstance::make(cost.dim, cost.samples_per_round, cost.k, lambda_reg, cost.noise_sd,
                                cost.support_offset);
}

} // namespace

PreparedRun prepare_cell(const RunConfig& cfg, const RunCell& cell)
{
    PreparedRun prep;
    double computed_L = 0.0;
    // Builds a stream of the configured kind; pilot streams use a derived seed.
    std::function<std::unique_ptr<CostStream>(std::uint64_t)> make_stream;

    if (cfg.cost.kind == CostConfig::Kind::sparse_learning) {
        const SparseInstance probe = sparse_instance(cfg.cost, cfg.cost.lambda_reg.value_or(0.0));
        const SparseCalibration cal = calibrate(probe, cell.seed, cfg.cost.pilot_rounds, cfg.cost.lambda_reg);
        const SparseInstance inst = sparse_instance(cfg.cost, cal.lambda_reg);
        prep.lambda_reg = cal.lambda_reg;
        computed_L = cal.L;
        make_stream = [inst](std::uint64_t seed) { return std::make_unique<SparseCostStream>(inst, seed); };
    } else {
        const DecomposedCost base = base_cost(cfg.cost);
        const double noise = cfg.cost.scale_noise;
        computed_L = ScaledCostStream(base, noise, 0).max_L();
        make_stream = [base, noise](std::uint64_t seed) {
            return std::make_unique<ScaledCostStream>(base, noise, seed);
        };
    }
    prep.stream = make_stream(cell.seed);
    if (prep.stream->n() != cfg.n)
        throw ConfigError("config field 'n': cost stream has ground-set size " +
                          std::to_string(prep.stream->n()));

    switch (cfg.alpha_beta.mode) {
    case AlphaBetaConfig::Mode::values:
        prep.params = {cfg.alpha_beta.alpha, cfg.alpha_beta.beta};
        prep.source = AlphaBetaSource::config;
        break;
    case AlphaBetaConfig::Mode::submodular_default:
        prep.params = {1.0, 1.0};
        prep.source = AlphaBetaSource::submodular_default;
        break;
    case AlphaBetaConfig::Mode::bruteforce: {
        auto pilot = make_stream(derive_seed(cell.seed, kPilotStream));
        WeakDRParams p{1.0, 1.0};
        for (int r = 0; r < cfg.alpha_beta.rounds; ++r) {
            const WeakDRParams est = estimate_weak_dr(pilot->next());
            p.alpha = std::min(p.alpha, est.alpha);
            p.beta = std::min(p.beta, est.beta);
        }
        if (!(p.alpha > 0.0))
            throw IntegrityError("brute-force alpha estimate is zero; supply alpha_beta values instead");
        prep.params = p;
        prep.source = AlphaBetaSource::bruteforce;
        break;
    }
    }

    RunSettings& s = prep.settings;
    s.algorithm = cell.algorithm;
    s.T = cfg.T;
    s.schedule = {cfg.step_schedule, cfg.L.value_or(computed_L), cfg.n, cfg.T, cfg.gamma, cell.step_multiplier};
    s.delay = cell.delay;
    if (cfg.x1)
        s.x1 = Eigen::Map<const Vector>(cfg.x1->data(), static_cast<Eigen::Index>(cfg.x1->size()));
    s.checkpoints = cfg.checkpoints;
    s.track_regret = cfg.regret;
    return prep;
}

std::string make_run_id(const RunCell& cell)
{
    char mult[32];
    std::snprintf(mult, sizeof mult, "%g", cell.step_multiplier);
    return std::string(to_string(cell.algorithm)) + "-" + cell.delay.kind_name() + cell.delay.param_text() +
           "-m" + mult + "-s" + std::to_string(cell.seed);
}

CellOutcome execute_cell(const RunConfig& cfg, const RunCell& cell)
{
    PreparedRun prep = prepare_cell(cfg, cell);
    CellOutcome out;
    out.run_id = make_run_id(cell);
    out.cell = cell;
    out.lambda_reg = prep.lambda_reg;
    out.L = prep.settings.schedule.L;
    out.gamma = cfg.gamma;
    out.result = run(prep.settings, *prep.stream, cell.seed);
    if (out.result.accumulator) {
        out.report = regret_report(out.result, prep.params, prep.source);
        out.curve = regret_curve(out.result, out.result.snapshots, prep.params);
    } else {
        out.report.T = cfg.T;
        out.report.cumulative_loss = out.result.cumulative_loss;
        out.report.params = prep.params;
        out.report.source = prep.source;
        out.report.standard_regret = std::nan("");
        out.report.ab_regret = std::nan("");
    }
    return out;
}

SummaryRow CellOutcome::summary() const
{
    SummaryRow row;
    row.run_id = run_id;
    row.algorithm = cell.algorithm;
    row.seed = cell.seed;
    row.n = result.final_state.schedule.n;
    row.T = report.T;
    row.delay_kind = cell.delay.kind_name();
    row.delay_param = cell.delay.param_text();
    row.gamma = gamma;
    row.alpha = report.params.alpha;
    row.beta = report.params.beta;
    row.source = report.source;
    row.L = L;
    row.lambda_reg = lambda_reg;
    row.final_standard_regret = report.standard_regret;
    row.final_ab_regret = report.ab_regret;
    return row;
}

std::vector<RunCell> run_cells(const RunConfig& cfg)
{
    std::vector<RunCell> cells;
    for (auto seed : cfg.seeds)
        cells.push_back({cfg.algorithm, cfg.delay, cfg.step_multiplier, seed});
    return cells;
}

std::vector<RunCell> sweep_cells(const RunConfig& cfg)
{
    const auto delays = cfg.sweep.delays.empty() ? std::vector<DelaySchedule>{cfg.delay} : cfg.sweep.delays;
    const auto algos =
        cfg.sweep.algorithms.empty() ? std::vector<Algorithm>{cfg.algorithm} : cfg.sweep.algorithms;
    const auto mults =
        cfg.sweep.step_multipliers.empty() ? std::vector<double>{cfg.step_multiplier} : cfg.sweep.step_multipliers;

    std::vector<RunCell> cells;
    std::vector<std::string> seen;
    for (const auto& d : delays)
        for (Algorithm a : algos)
            for (double m : mults)
                for (auto seed : cfg.seeds) {
                    const bool uses_delay = is_delayed(a) || cfg.sweep.delays.empty();
                    RunCell cell{a, uses_delay ? d : DelaySchedule::none(), m, seed};
                    const std::string id = make_run_id(cell);
                    if (std::find(seen.begin(), seen.end(), id) != seen.end())
                        continue;
                    seen.push_back(id);
                    cells.push_back(std::move(cell));
                }
    return cells;
}

namespace {

struct Executed {
    SummaryRow row;
    RunCell cell;
};

// Runs every cell (up to `parallel` at once), writing per-run trace and curve
// files as each finishes. Rows come back in cell order.
std::vector<Executed> execute_all(const RunConfig& cfg, const std::vector<RunCell>& cells,
                                  const std::filesystem::path& out_dir, int parallel)
{
    std::filesystem::create_directories(out_dir);
    std::vector<Executed> rows(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                const CellOutcome o = execute_cell(cfg, cells[i]);
                {
                    std::ofstream trace(out_dir / ("trace_" + o.run_id + ".csv"));
                    write_trace_csv(trace, o.run_id, o.result);
                }
                if (o.result.accumulator) {
                    std::ofstream curve(out_dir / ("curve_" + o.run_id + ".csv"));
                    write_curve_csv(curve, o.run_id, o.curve);
                }
                SummaryRow row = o.summary();
                row.x1 = cfg.x1 ? Eigen::Map<const Vector>(cfg.x1->data(),
                                                           static_cast<Eigen::Index>(cfg.x1->size()))
                                      .eval()
                                : Point::Constant(cfg.n, 0.5);
                rows[i] = {std::move(row), cells[i]};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int threads = std::max(1, std::min<int>(parallel, static_cast<int>(cells.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int k = 0; k < threads; ++k)
            pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return rows;
}

void write_summary(const std::filesystem::path& path, const std::vector<Executed>& rows)
{
    std::ofstream out(path);
    out << kSummaryHeader << '\n';
    for (const auto& r : rows)
        write_summary_row(out, r.row);
}

void print_table(std::ostream& out, const std::vector<Executed>& rows)
{
    char line[256];
    std::snprintf(line, sizeof line, "%-32s %16s %16s %9s %9s %12s\n", "run_id", "regret", "ab_regret", "alpha",
                  "beta", "L");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-32s %16.6g %16.6g %9.4g %9.4g %12.6g\n", r.row.run_id.c_str(),
                      r.row.final_standard_regret, r.row.final_ab_regret, r.row.alpha, r.row.beta, r.row.L);
        out << line;
    }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

struct Stats {
    double mean = 0.0;
    double sd = 0.0;
};

Stats stats(const std::vector<double>& xs)
{
    Stats s;
    if (xs.empty())
        return s;
    for (double x : xs)
        s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs)
            ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

} // namespace

int cmd_run(const std::filesystem::path& config, const CliOptions& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load_config(config);
        const auto out_dir = opts.out.value_or(cfg.output_dir);
        const auto rows = execute_all(cfg, run_cells(cfg), out_dir, opts.parallel.value_or(cfg.parallel));
        write_summary(out_dir / "summary.csv", rows);
        if (!opts.quiet)
            print_table(out, rows);
        return static_cast<int>(kExitOk);
    });
}

int cmd_sweep(const std::filesystem::path& config, const CliOptions& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load_config(config);
        const auto out_dir = opts.out.value_or(cfg.output_dir);
        const auto rows = execute_all(cfg, sweep_cells(cfg), out_dir, opts.parallel.value_or(cfg.parallel));
        write_summary(out_dir / "summary.csv", rows);

        // Cells keyed by everything but the seed, in first-seen order.
        std::vector<std::string> order;
        std::map<std::string, std::vector<const Executed*>> groups;
        for (const auto& r : rows) {
            RunCell key = r.cell;
            key.seed = 0;
            std::string id = make_run_id(key);
            id.resize(id.size() - 3); // drop "-s0"
            if (!groups.contains(id))
                order.push_back(id);
            groups[id].push_back(&r);
        }
        std::ofstream cells_csv(out_dir / "sweep_cells.csv");
        cells_csv << kSweepCellHeader << '\n';
        for (const auto& id : order) {
            const auto& members = groups[id];
            std::vector<double> std_r, ab_r;
            for (const auto* m : members) {
                std_r.push_back(m->row.final_standard_regret);
                ab_r.push_back(m->row.final_ab_regret);
            }
            const Stats s = stats(std_r), a = stats(ab_r);
            const RunCell& c = members.front()->cell;
            cells_csv << id << ',' << to_string(c.algorithm) << ',' << c.delay.kind_name() << ','
                      << c.delay.param_text() << ',' << format_double(c.step_multiplier) << ',' << members.size()
                      << ',' << format_double(s.mean) << ',' << format_double(s.sd) << ','
                      << format_double(a.mean) << ',' << format_double(a.sd) << '\n';
        }
        if (!opts.quiet)
            print_table(out, rows);
        return static_cast<int>(kExitOk);
    });
}

int cmd_validate(const std::filesystem::path& config, const CliOptions& opts, std::ostream& out,
                 std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load_config(config);
        if (cfg.n > kMaxWeakDRSize)
            throw CapacityError("validate needs n <= " + std::to_string(kMaxWeakDRSize) + ", got n = " +
                                std::to_string(cfg.n));
        PreparedRun prep = prepare_cell(cfg, {cfg.algorithm, cfg.delay, cfg.step_multiplier, cfg.seeds.front()});
        const DecomposedCost sample = prep.stream->next();

        const ValidationReport report = validate_cost(sample);
        if (!report.ok()) {
            err << "cost validation failed with " << report.violations.size() << " violation(s):\n";
            for (const auto& v : report.violations)
                err << "  " << v.describe() << '\n';
            return static_cast<int>(kExitRuntime);
        }
        const WeakDRParams est = estimate_weak_dr(sample);
        const LBound L = bound_L(sample);
        if (!opts.quiet) {
            out << "cost: " << cfg.cost.kind_name() << " (n = " << cfg.n << "), sampled round 1 of seed "
                << cfg.seeds.front() << '\n';
            out << "validation: ok\n";
            out << "alpha_hat = " << format_double(est.alpha) << '\n';
            out << "beta_hat = " << format_double(est.beta) << '\n';
            out << "L = " << format_double(L.computed) << '\n';
            if (prep.lambda_reg)
                out << "lambda_reg = " << format_double(*prep.lambda_reg) << '\n';
            out << "step-size L = " << format_double(prep.settings.schedule.L) << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

} // namespace nsmin
