#include "nsmin/csv.hpp"

#include <cstdio>
#include <ostream>

namespace nsmin {

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& os, const std::string& run_id, const RunResult& result)
{
    os << kTraceHeader << '\n';
    const std::string prefix = run_id + ',' + std::string(to_string(result.algorithm)) + ',' +
                               std::to_string(result.seed) + ',';
    double cum = 0.0;
    for (const RoundRecord& r : result.trace) {
        cum += r.loss;
        os << prefix << r.t << ',' << r.delay << ',' << (r.consumed ? *r.consumed : -1) << ','
           << r.chosen.to_hex() << ',' << r.sampled_index << ',' << format_double(r.loss) << ','
           << format_double(cum) << ',' << format_double(r.eta) << ','
           << (r.mu ? format_double(*r.mu) : std::string()) << ',' << (r.mu_clamped ? 1 : 0) << '\n';
    }
}

void write_curve_csv(std::ostream& os, const std::string& run_id, const std::vector<CurvePoint>& curve)
{
    os << kCurveHeader << '\n';
    for (const CurvePoint& p : curve)
        os << run_id << ',' << p.t << ',' << format_double(p.standard_regret) << ','
           << format_double(p.ab_regret) << '\n';
}

void write_summary_row(std::ostream& os, const SummaryRow& row)
{
    std::string x1;
    for (Eigen::Index i = 0; i < row.x1.size(); ++i) {
        if (i)
            x1 += ' ';
        x1 += format_double(row.x1(i));
    }
    os << row.run_id << ',' << to_string(row.algorithm) << ',' << row.seed << ',' << row.n << ',' << row.T
       << ',' << row.delay_kind << ',' << row.delay_param << ',' << format_double(row.gamma) << ','
       << format_double(row.alpha) << ',' << format_double(row.beta) << ',' << to_string(row.source) << ','
       << format_double(row.L) << ',' << (row.lambda_reg ? format_double(*row.lambda_reg) : std::string())
       << ',' << format_double(row.final_standard_regret) << ',' << format_double(row.final_ab_regret) << ','
       << x1 << '\n';
}

} // namespace nsmin
