#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsmin/config.hpp"
#include "nsmin/csv.hpp"
#include "nsmin/engine.hpp"

namespace nsmin {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitCapacity = 3, kExitRuntime = 4 };

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

struct CliOptions {
    std::optional<std::filesystem::path> out;
    std::optional<int> parallel;
    bool quiet = false;
};

/// One (algorithm, delay, step multiplier, seed) combination.
struct RunCell {
    Algorithm algorithm = Algorithm::oagd;
    DelaySchedule delay;
    double step_multiplier = 1.0;
    std::uint64_t seed = 1;
};

/// Everything derived from a config before the round loop starts.
struct PreparedRun {
    std::unique_ptr<CostStream> stream;
    RunSettings settings;
    WeakDRParams params;
    AlphaBetaSource source = AlphaBetaSource::submodular_default;
    std::optional<double> lambda_reg;
};

/// Builds the data stream (seeded from the cell's seed), L, (alpha, beta) and the run settings.
PreparedRun prepare_cell(const RunConfig& cfg, const RunCell& cell);

struct CellOutcome {
    std::string run_id;
    RunCell cell;
    RunResult result;
    RegretReport report;
    std::vector<CurvePoint> curve;
    SummaryRow summary() const;
    std::optional<double> lambda_reg;
    double L = 0.0;
    double gamma = 0.0;
};

CellOutcome execute_cell(const RunConfig& cfg, const RunCell& cell);

std::string make_run_id(const RunCell& cell);

/// Cells of a plain run: every seed with the configured algorithm, delay and multiplier.
std::vector<RunCell> run_cells(const RunConfig& cfg);
/// Cross product of the sweep axes (falling back to the plain settings for empty
/// axes) with the seeds. Undelayed algorithms collapse onto the "none" delay.
std::vector<RunCell> sweep_cells(const RunConfig& cfg);

int cmd_run(const std::filesystem::path& config, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const std::filesystem::path& config, const CliOptions& opts, std::ostream& out,
                 std::ostream& err);
int cmd_sweep(const std::filesystem::path& config, const CliOptions& opts, std::ostream& out,
              std::ostream& err);

} // namespace nsmin
