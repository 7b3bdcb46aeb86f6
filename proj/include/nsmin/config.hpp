#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nsmin/delay.hpp"
#include "nsmin/learners.hpp"

namespace nsmin {

struct CostConfig {
    enum class Kind { sparse_learning, modular_stream, tabular_stream };
    Kind kind = Kind::modular_stream;

    // sparse_learning
    int dim = 10;
    int samples_per_round = 100;
    int k = 2;
    std::optional<double> lambda_reg;
    double noise_sd = 0.01;
    int support_offset = 1;
    int pilot_rounds = 50;

    // modular_stream
    std::vector<double> weights;

    // tabular_stream
    std::filesystem::path fbar_path;
    std::optional<std::filesystem::path> funder_path;

    // modular_stream and tabular_stream: i.i.d. multiplicative jitter of each part
    double scale_noise = 0.0;

    std::string kind_name() const;
};

struct AlphaBetaConfig {
    enum class Mode { values, bruteforce, submodular_default };
    Mode mode = Mode::submodular_default;
    double alpha = 1.0;
    double beta = 1.0;
    int rounds = 3; ///< pilot rounds inspected in bruteforce mode
};

struct SweepAxes {
    std::vector<DelaySchedule> delays;
    std::vector<Algorithm> algorithms;
    std::vector<double> step_multipliers;
};

/// Parsed and validated run configuration (JSON on disk).
struct RunConfig {
    Algorithm algorithm = Algorithm::oagd;
    int n = 0;
    int T = 1;
    std::vector<std::uint64_t> seeds{1};
    DelaySchedule delay;
    double gamma = 0.0;
    StepMode step_schedule = StepMode::fixed_horizon;
    double step_multiplier = 1.0;
    CostConfig cost;
    std::optional<double> L;
    AlphaBetaConfig alpha_beta;
    std::optional<std::vector<double>> x1;
    int checkpoints = 200;
    bool regret = true;
    std::filesystem::path output_dir = "out";
    int parallel = 1;
    SweepAxes sweep;
};

/// Throws ConfigError naming the offending field, CapacityError for size guards.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

} // namespace nsmin
