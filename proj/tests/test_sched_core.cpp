#include <doctest.h>

#include "resched/schedule.hpp"
#include "test_support.hpp"

using namespace resched;

TEST_CASE("weight_of sums over the set") {
    Instance inst = test::trp_line({1.0}, {{0.5, 2.0, 1}, {0.5, 3.0, 1}, {0.5, 0.25, 0}});
    CHECK(weight_of({}, inst) == 0.0);
    CHECK(weight_of({0, 1}, inst) == doctest::Approx(5.0));
    CHECK(weight_of({2}, inst) == doctest::Approx(0.25));
    CHECK_THROWS_AS(weight_of({7}, inst), Error);
}

TEST_CASE("weight_of is additive over disjoint sets") {
    Instance inst = test::trp_line({1.0, 1.0},
                                   {{0.5, 1.5, 1}, {0.5, 2.5, 2}, {0.5, 4.0, 0}, {1.0, 0.5, 1}});
    double all = weight_of({0, 1, 2, 3}, inst);
    CHECK(all == doctest::Approx(weight_of({0, 2}, inst) + weight_of({1, 3}, inst)));
}

TEST_CASE("schedule_cost weights completion offsets") {
    Instance inst = test::trp_line({1.0}, {{0.0, 1.0, 1}, {0.0, 2.0, 1}});
    ActionSchedule s = ActionSchedule::empty(4.0);
    s.completions[0] = 1.0;
    s.completions[1] = 3.0;
    CHECK(schedule_cost(s, {}, inst) == 0.0);
    CHECK(schedule_cost(s, {0}, inst) == doctest::Approx(1.0));
    CHECK(schedule_cost(s, {0, 1}, inst) == doctest::Approx(7.0));
    CHECK_THROWS_AS(schedule_cost(ActionSchedule::empty(4.0), {0}, inst), Error);
}

TEST_CASE("val charges tau per unit weight of uncompleted arrivals") {
    Instance inst = test::trp_line({1.0}, {{0.0, 1.0, 1}, {0.0, 1.0, 1}});

    SUBCASE("pure penalty") {
        ActionSchedule empty = ActionSchedule::empty(2.0);
        CHECK(val(empty, 2.0, {0}, inst) == doctest::Approx(2.0));
    }
    SUBCASE("no penalty when everything is served") {
        ActionSchedule s = ActionSchedule::empty(2.0);
        s.completions[0] = 1.0;
        CHECK(val(s, 2.0, {0}, inst) == doctest::Approx(1.0));
    }
    SUBCASE("mixed") {
        // two arrived unit-weight jobs, one done at 0.5, tau = 3
        ActionSchedule s = ActionSchedule::empty(3.0);
        s.completions[0] = 0.5;
        CHECK(val(s, 3.0, {0, 1}, inst) == doctest::Approx(3.5));
    }
    SUBCASE("duration mismatch is an error") {
        ActionSchedule s = ActionSchedule::empty(2.0);
        CHECK_THROWS_AS(val(s, 3.0, {0}, inst), Error);
    }
}

TEST_CASE("val dominates schedule_cost, equal only when everything is completed") {
    Instance inst = test::trp_line({1.0, 1.0}, {{0.0, 1.0, 1}, {0.0, 2.0, 2}, {0.0, 0.5, 0}});
    ActionSchedule s = ActionSchedule::empty(5.0);
    s.completions[0] = 1.0;
    s.completions[1] = 2.0;

    double with_missing = val(s, 5.0, {0, 1, 2}, inst);
    CHECK(with_missing > schedule_cost(s, s.completed_set(), inst));
    // removing job 1 from the completions raises val by exactly w*(tau - C)
    ActionSchedule reduced = s;
    reduced.completions.erase(1);
    CHECK(val(reduced, 5.0, {0, 1, 2}, inst) - with_missing == doctest::Approx(2.0 * (5.0 - 2.0)));

    double complete = val(s, 5.0, {0, 1}, inst);
    CHECK(complete == doctest::Approx(schedule_cost(s, {0, 1}, inst)));
}
