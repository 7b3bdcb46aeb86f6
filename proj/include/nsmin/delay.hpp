#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "nsmin/ground.hpp"

namespace nsmin {

/// Delay d_t >= 0 attached to each round t >= 1.
class DelaySchedule {
public:
    enum class Kind { none, constant, power, file };

    DelaySchedule() = default;

    static DelaySchedule none();
    static DelaySchedule constant(int d);
    /// d_t = floor(c * t^gamma).
    static DelaySchedule power(double c, double gamma);
    /// Explicit per-round delays; `values[t-1]` is d_t.
    static DelaySchedule from_values(std::vector<int> values, std::string source = "inline");
    /// One integer per line, line t holding d_t.
    static DelaySchedule load(const std::filesystem::path& path);

    Kind kind() const { return kind_; }
    int constant_delay() const { return constant_; }
    double coefficient() const { return c_; }
    double exponent() const { return gamma_; }
    const std::string& source() const { return source_; }

    /// Throws OutOfRange when a file schedule has no entry for round t.
    int delay_of(int t) const;

    std::string kind_name() const;
    /// Scalar summary for reports: d (constant), c (power), file length, 0 (none).
    std::string param_text() const;

private:
    Kind kind_ = Kind::none;
    int constant_ = 0;
    double c_ = 0.0;
    double gamma_ = 0.0;
    std::vector<int> values_;
    std::string source_;
};

/// R_t = {s <= t : s + d_s = t}, by direct scan.
std::vector<int> arrivals(const DelaySchedule& sched, int t);

/// Gradient (exact or estimated) generated at `origin_round`.
struct GradientRecord {
    int origin_round = 0;
    Vector vector;
};

/// Priority queue of generated-but-unconsumed feedback, oldest origin first.
class FeedbackPool {
public:
    /// Throws IntegrityError if this origin has been inserted before.
    void insert(GradientRecord record);
    std::optional<GradientRecord> pop();

    /// Inserts all arrivals, then pops the oldest record if any.
    std::optional<GradientRecord> step(std::vector<GradientRecord> arrivals);

    std::size_t size() const { return heap_.size(); }
    bool empty() const { return heap_.empty(); }
    std::optional<int> oldest() const;

private:
    struct Later {
        bool operator()(const GradientRecord& a, const GradientRecord& b) const
        {
            return a.origin_round > b.origin_round;
        }
    };
    std::priority_queue<GradientRecord, std::vector<GradientRecord>, Later> heap_;
    std::unordered_set<int> inserted_;
};

/// Incremental R_t: records are registered when generated and released at s + d_s.
class ArrivalBook {
public:
    explicit ArrivalBook(int horizon) : horizon_(horizon), slots_(horizon + 1) {}

    /// Returns false (and drops the record) when it would arrive after the horizon.
    bool schedule(GradientRecord record, int delay);
    std::vector<GradientRecord> take(int t);

private:
    int horizon_;
    std::vector<std::vector<GradientRecord>> slots_;
};

struct AssumptionReport {
    bool ok = true;
    int first_violation = 0; ///< round of the first d_t > c t^gamma, 0 if none
    int delay = 0;
    double bound = 0.0;
};

/// Checks d_t <= c * t^gamma for t = 1..T.
AssumptionReport verify_assumption(const DelaySchedule& sched, int T, double gamma, double c);

} // namespace nsmin
