#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsmin/engine.hpp"

namespace nsmin {

/// Shortest round-trippable decimal form ("%.17g").
std::string format_double(double v);

inline constexpr const char* kTraceHeader =
    "run_id,algorithm,seed,t,d_t,q_t,chosen_set_hex,sampled_index,loss,cum_loss,eta_t,mu_t,mu_clamped";
inline constexpr const char* kCurveHeader = "run_id,t,standard_regret_prefix,ab_regret_prefix";
inline constexpr const char* kSummaryHeader =
    "run_id,algorithm,seed,n,T,delay_kind,delay_param,gamma,alpha,beta,alpha_beta_source,L,lambda_reg,"
    "final_standard_regret,final_ab_regret,x1";
inline constexpr const char* kSweepCellHeader =
    "cell_id,algorithm,delay_kind,delay_param,step_multiplier,seeds,mean_standard_regret,"
    "sd_standard_regret,mean_ab_regret,sd_ab_regret";

void write_trace_csv(std::ostream& os, const std::string& run_id, const RunResult& result);
void write_curve_csv(std::ostream& os, const std::string& run_id, const std::vector<CurvePoint>& curve);

struct SummaryRow {
    std::string run_id;
    Algorithm algorithm = Algorithm::oagd;
    std::uint64_t seed = 0;
    int n = 0;
    int T = 0;
    std::string delay_kind;
    std::string delay_param;
    double gamma = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
    AlphaBetaSource source = AlphaBetaSource::submodular_default;
    double L = 0.0;
    std::optional<double> lambda_reg;
    double final_standard_regret = 0.0;
    double final_ab_regret = 0.0;
    Point x1;
};

void write_summary_row(std::ostream& os, const SummaryRow& row);

} // namespace nsmin
