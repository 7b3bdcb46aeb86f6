#include "nsmin/delay.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nsmin/errors.hpp"

namespace nsmin {

DelaySchedule DelaySchedule::none()
{
    return {};
}

DelaySchedule DelaySchedule::constant(int d)
{
    if (d < 0)
        throw InvalidArgument("constant delay must be nonnegative, got " + std::to_string(d));
    DelaySchedule s;
    s.kind_ = Kind::constant;
    s.constant_ = d;
    return s;
}

DelaySchedule DelaySchedule::power(double c, double gamma)
{
    if (!(c >= 0.0))
        throw InvalidArgument("power delay coefficient must be nonnegative");
    if (!(gamma < 1.0))
        throw InvalidArgument("power delay exponent must be < 1");
    DelaySchedule s;
    s.kind_ = Kind::power;
    s.c_ = c;
    s.gamma_ = gamma;
    return s;
}

DelaySchedule DelaySchedule::from_values(std::vector<int> values, std::string source)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] < 0)
            throw InvalidArgument("negative delay at round " + std::to_string(i + 1));
    DelaySchedule s;
    s.kind_ = Kind::file;
    s.values_ = std::move(values);
    s.source_ = std::move(source);
    return s;
}

DelaySchedule DelaySchedule::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open delay file " + path.string());
    std::vector<int> values;
    long long d = 0;
    while (in >> d) {
        if (d < 0)
            throw InvalidArgument(path.string() + ": negative delay on line " +
                                  std::to_string(values.size() + 1));
        values.push_back(static_cast<int>(d));
    }
    if (!in.eof())
        throw InvalidArgument(path.string() + ": non-integer entry on line " +
                              std::to_string(values.size() + 1));
    return from_values(std::move(values), path.string());
}

int DelaySchedule::delay_of(int t) const
{
    if (t < 1)
        throw InvalidArgument("rounds start at 1, got " + std::to_string(t));
    switch (kind_) {
    case Kind::none:
        return 0;
    case Kind::constant:
        return constant_;
    case Kind::power:
        return static_cast<int>(std::floor(c_ * std::pow(static_cast<double>(t), gamma_)));
    case Kind::file:
        if (static_cast<std::size_t>(t) > values_.size())
            throw OutOfRange("delay schedule " + source_ + " has " + std::to_string(values_.size()) +
                             " entries, round " + std::to_string(t) + " requested");
        return values_[t - 1];
    }
    return 0;
}

std::string DelaySchedule::kind_name() const
{
    switch (kind_) {
    case Kind::none:
        return "none";
    case Kind::constant:
        return "constant";
    case Kind::power:
        return "power";
    case Kind::file:
        return "file";
    }
    return "none";
}

std::string DelaySchedule::param_text() const
{
    char buf[64];
    switch (kind_) {
    case Kind::none:
        return "0";
    case Kind::constant:
        return std::to_string(constant_);
    case Kind::power:
        std::snprintf(buf, sizeof buf, "%.17g", c_);
        return buf;
    case Kind::file:
        return std::to_string(values_.size());
    }
    return "0";
}

std::vector<int> arrivals(const DelaySchedule& sched, int t)
{
    std::vector<int> out;
    for (int s = 1; s <= t; ++s)
        if (s + sched.delay_of(s) == t)
            out.push_back(s);
    return out;
}

void FeedbackPool::insert(GradientRecord record)
{
    if (record.origin_round < 1)
        throw InvalidArgument("gradient record origin must be >= 1");
    if (!inserted_.insert(record.origin_round).second)
        throw IntegrityError("feedback from round " + std::to_string(record.origin_round) +
                             " inserted twice");
    heap_.push(std::move(record));
}

std::optional<GradientRecord> FeedbackPool::pop()
{
    if (heap_.empty())
        return std::nullopt;
    GradientRecord top = heap_.top();
    heap_.pop();
    return top;
}

std::optional<GradientRecord> FeedbackPool::step(std::vector<GradientRecord> arrivals)
{
    for (auto& r : arrivals)
        insert(std::move(r));
    return pop();
}

std::optional<int> FeedbackPool::oldest() const
{
    if (heap_.empty())
        return std::nullopt;
    return heap_.top().origin_round;
}

bool ArrivalBook::schedule(GradientRecord record, int delay)
{
    const long long arrival = static_cast<long long>(record.origin_round) + delay;
    if (arrival > horizon_)
        return false;
    slots_[static_cast<std::size_t>(arrival)].push_back(std::move(record));
    return true;
}

std::vector<GradientRecord> ArrivalBook::take(int t)
{
    if (t < 1 || t > horizon_)
        return {};
    return std::exchange(slots_[t], {});
}

AssumptionReport verify_assumption(const DelaySchedule& sched, int T, double gamma, double c)
{
    if (T < 1)
        throw InvalidArgument("verify_assumption needs T >= 1");
    AssumptionReport report;
    for (int t = 1; t <= T; ++t) {
        const int d = sched.delay_of(t);
        const double bound = c * std::pow(static_cast<double>(t), gamma);
        if (d > bound) {
            report = {false, t, d, bound};
            break;
        }
    }
    return report;
}

} // namespace nsmin
