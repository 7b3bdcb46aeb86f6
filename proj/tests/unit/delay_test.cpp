#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nsmin/delay.hpp"
#include "nsmin/errors.hpp"

using namespace nsmin;

namespace {

GradientRecord rec(int origin) { return {origin, Vector::Constant(1, origin)}; }

std::vector<int> origins(const std::vector<GradientRecord>& rs)
{
    std::vector<int> out;
    for (const auto& r : rs)
        out.push_back(r.origin_round);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("delay kinds")
{
    CHECK(DelaySchedule::constant(500).delay_of(1) == 500);
    CHECK(DelaySchedule::constant(500).delay_of(9999) == 500);
    CHECK(DelaySchedule::none().delay_of(42) == 0);
    CHECK(DelaySchedule::power(1.0, 0.5).delay_of(9) == 3);
    CHECK(DelaySchedule::power(2.0, 0.5).delay_of(10) == 6);
    CHECK_THROWS_AS(DelaySchedule::power(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(DelaySchedule::constant(-1), InvalidArgument);
    CHECK_THROWS_AS(DelaySchedule::none().delay_of(0), InvalidArgument);

    const auto f = DelaySchedule::from_values({2, 0, 1});
    CHECK(f.delay_of(1) == 2);
    CHECK(f.delay_of(3) == 1);
    CHECK_THROWS_AS(f.delay_of(4), OutOfRange);
    CHECK(f.kind_name() == "file");
    CHECK(f.param_text() == "3");
    CHECK(DelaySchedule::constant(500).param_text() == "500");
    CHECK(DelaySchedule::none().param_text() == "0");
}

TEST_CASE("delay file")
{
    const auto path = std::filesystem::temp_directory_path() / "nsmin_delay_test.txt";
    {
        std::ofstream out(path);
        out << "2\n0\n1\n";
    }
    const auto sched = DelaySchedule::load(path);
    CHECK(sched.delay_of(1) == 2);
    CHECK(sched.delay_of(2) == 0);
    {
        std::ofstream out(path);
        out << "2\n-1\n";
    }
    CHECK_THROWS_AS(DelaySchedule::load(path), InvalidArgument);
    {
        std::ofstream out(path);
        out << "2\nx\n";
    }
    CHECK_THROWS_AS(DelaySchedule::load(path), InvalidArgument);
    std::filesystem::remove(path);
}

TEST_CASE("arrival sets")
{
    const auto f = DelaySchedule::from_values({2, 0, 1, 0});
    CHECK(arrivals(f, 1).empty());
    CHECK(arrivals(f, 2) == std::vector<int>{2});
    CHECK(arrivals(f, 3) == std::vector<int>{1});
    CHECK(arrivals(f, 4) == std::vector<int>{3, 4});

    for (int t = 1; t <= 5; ++t)
        CHECK(arrivals(DelaySchedule::none(), t) == std::vector<int>{t});
    const auto c = DelaySchedule::constant(3);
    CHECK(arrivals(c, 3).empty());
    CHECK(arrivals(c, 7) == std::vector<int>{4});
}

TEST_CASE("arrival book matches the scan")
{
    const auto f = DelaySchedule::from_values({2, 0, 1, 5, 0, 0, 3, 1});
    const int T = 8;
    ArrivalBook book(T);
    for (int t = 1; t <= T; ++t) {
        const bool kept = book.schedule(rec(t), f.delay_of(t));
        CHECK(kept == (t + f.delay_of(t) <= T));
        CHECK(origins(book.take(t)) == arrivals(f, t));
    }
}

TEST_CASE("pool ordering")
{
    FeedbackPool pool;
    CHECK_FALSE(pool.step({}).has_value());

    pool.insert(rec(3));
    const auto got = pool.step({rec(1)});
    REQUIRE(got.has_value());
    CHECK(got->origin_round == 1);
    CHECK(pool.size() == 1);
    CHECK(pool.oldest() == 3);

    CHECK_THROWS_AS(pool.insert(rec(3)), IntegrityError);
    CHECK_THROWS_AS(pool.insert(rec(1)), IntegrityError);
    CHECK_THROWS_AS(pool.insert(rec(0)), InvalidArgument);
}

TEST_CASE("hand-simulated pooling sequence")
{
    const auto f = DelaySchedule::from_values({2, 0, 1});
    const int T = 4;
    ArrivalBook book(T + 1);
    FeedbackPool pool;
    std::vector<std::optional<int>> consumed;
    for (int t = 1; t <= T; ++t) {
        if (t <= 3)
            book.schedule(rec(t), f.delay_of(t));
        auto q = pool.step(book.take(t));
        consumed.push_back(q ? std::optional<int>(q->origin_round) : std::nullopt);
    }
    CHECK_FALSE(consumed[0].has_value());
    CHECK(consumed[1] == 2);
    CHECK(consumed[2] == 1);
    CHECK(consumed[3] == 3);
}

TEST_CASE("delay assumption")
{
    CHECK(verify_assumption(DelaySchedule::constant(500), 10'000, 0.5, 500).ok);

    std::vector<int> linear(10'000);
    for (int t = 1; t <= 10'000; ++t)
        linear[t - 1] = t;
    const auto rep = verify_assumption(DelaySchedule::from_values(linear), 10'000, 0.5, 10.0);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_violation > 0);
    CHECK(rep.delay == rep.first_violation);

    CHECK(verify_assumption(DelaySchedule::power(1.0, 0.3), 10'000, 0.5, 1.0).ok);
    CHECK_THROWS_AS(verify_assumption(DelaySchedule::none(), 0, 0.5, 1.0), InvalidArgument);
}
