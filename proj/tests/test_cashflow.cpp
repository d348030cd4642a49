#include <doctest.h>

#include <random>

#include "payback/axioms.hpp"
#include "payback/cashflow.hpp"

using namespace payback;

TEST_CASE("make_project merges, cancels, sorts") {
    Project merged = make_project({{0, -1}, {0, -1}, {5, 2}});
    REQUIRE(merged.size() == 2);
    CHECK(merged.events()[0] == Event{0, -2});
    CHECK(merged.events()[1] == Event{5, 2});

    CHECK(make_project({{1, 3}, {1, -3}}).is_zero());

    Project sorted = make_project({{5, 2}, {0, -1}});
    CHECK(sorted.events()[0] == Event{0, -1});
    CHECK(sorted.events()[1] == Event{5, 2});

    CHECK_THROWS_AS(make_project({{-1, 1}}), ValidationError);
}

TEST_CASE("evaluate is right-continuous") {
    Project x = make_project({{0, -1}, {5, 2}});
    CHECK(evaluate(x, 4) == -1);
    CHECK(evaluate(x, 5) == 1);
    CHECK(evaluate(Project{}, 7) == 0);
    CHECK_THROWS_AS(evaluate(x, -1), ValidationError);
}

TEST_CASE("add and scale") {
    Project x = make_project({{0, -1}, {1, 2}});
    Project y = make_project({{0, -2}, {3, 3}});
    Project sum = add(x, y);
    CHECK(sum == make_project({{0, -3}, {1, 2}, {3, 3}}));
    CHECK(add(x, negate(x)).is_zero());
    CHECK(add(Project{}, x) == x);

    CHECK(scale(x, 1) == x);
    CHECK(scale(x, 0).is_zero());
    CHECK(scale(make_project({{0, -1}, {5, 2}}), -2) == make_project({{0, 2}, {5, -4}}));
}

TEST_CASE("dominates") {
    CHECK(dominates(make_project({{0, -1}}), Project{}));
    CHECK(dominates(make_project({{0, -1}, {5, 2}}), make_project({{0, -1}, {4, 2}})));
    CHECK_FALSE(dominates(make_project({{0, 1}}), make_project({{0, -1}})));
}

TEST_CASE("negative_set") {
    auto intervals = negative_set(make_project({{0, -100}, {1, 150}, {2, -100}, {3, 60}}));
    REQUIRE(intervals.size() == 2);
    CHECK(intervals[0] == NegativeInterval{0, ExtendedTime(Rational(1))});
    CHECK(intervals[1] == NegativeInterval{2, ExtendedTime(Rational(3))});

    CHECK(negative_set(Project{}).empty());

    auto unbounded = negative_set(make_project({{0, -1}}));
    REQUIRE(unbounded.size() == 1);
    CHECK(unbounded[0].start == 0);
    CHECK_FALSE(unbounded[0].end.is_finite());
}

TEST_CASE("classify") {
    ProjectClass p0 = classify(make_project({{0, -1}, {5, 2}}));
    CHECK(p0.tag == ProjectTag::P0);
    CHECK(*p0.phase_switch == 5);

    CHECK(classify(make_project({{0, -100}, {1, 150}, {2, -100}, {3, 60}})).tag ==
          ProjectTag::GENERAL);

    // Nondecreasing recovery: in P1, reported as the sharper P2.
    ProjectClass p2 = classify(make_project({{0, -2}, {1, 1}, {3, 1}}));
    CHECK(p2.tag == ProjectTag::P2);
    CHECK(*p2.phase_switch == 3);
    CHECK(is_p1(make_project({{0, -2}, {1, 1}, {3, 1}})));

    CHECK(classify(Project{}).tag == ProjectTag::ZERO);
    CHECK(classify(make_project({{1, 4}})).tag == ProjectTag::NONNEGATIVE);
    CHECK(classify(make_project({{0, -1}})).tag == ProjectTag::GENERAL);
    CHECK_FALSE(is_p1(Project{}));
}

TEST_CASE("terminal_value") {
    CHECK(terminal_value(make_project({{0, -1}, {5, 2}})) == 1);
    CHECK(terminal_value(Project{}) == 0);
    CHECK(terminal_value(make_project({{0, -100}, {1, 150}, {2, -100}, {3, 60}})) == 10);
}

TEST_CASE("evaluate agrees with raw prefix sums on the sample grid") {
    std::mt19937_64 rng(42);
    GenParams params;
    for (int trial = 0; trial < 300; ++trial) {
        Project x = gen_project(rng, params);
        for (const Rational& t : sample_grid(x)) {
            Rational expected = 0;
            for (const Event& e : x.events()) {
                if (e.time <= t) expected += e.amount;
            }
            CHECK(evaluate(x, t) == expected);
        }
    }
}

TEST_CASE("vector-space laws hold pointwise") {
    std::mt19937_64 rng(7);
    GenParams params;
    for (int trial = 0; trial < 200; ++trial) {
        Project x = gen_project(rng, params);
        Project y = gen_project(rng, params);
        Project z = gen_project(rng, params);
        CHECK(add(x, y) == add(y, x));
        CHECK(add(add(x, y), z) == add(x, add(y, z)));
        Rational lambda = gen_positive_rational(rng, 10, 16) - 5;
        CHECK(scale(add(x, y), lambda) == add(scale(x, lambda), scale(y, lambda)));
    }
}

TEST_CASE("dominates agrees with exhaustive grid comparison") {
    std::mt19937_64 rng(11);
    GenParams params;
    for (int trial = 0; trial < 300; ++trial) {
        Project x = gen_project(rng, params);
        Project y = gen_project(rng, params);
        bool expected = true;
        Project both = add(x, y);  // its grid refines both event sets
        for (const Rational& t : sample_grid(both)) {
            if (evaluate(x, t) > evaluate(y, t)) expected = false;
        }
        if (both.is_zero()) expected = true;
        CHECK(dominates(x, y) == expected);
    }
}

TEST_CASE("negative_set is consistent with evaluate") {
    std::mt19937_64 rng(13);
    GenParams params;
    for (int trial = 0; trial < 300; ++trial) {
        Project x = gen_project(rng, params);
        auto intervals = negative_set(x);
        for (const auto& interval : intervals) {
            CHECK(evaluate(x, interval.start) < 0);
            if (interval.end.is_finite()) {
                Rational mid = (interval.start + interval.end.finite_value()) / 2;
                CHECK(evaluate(x, mid) < 0);
                CHECK(evaluate(x, interval.end.finite_value()) >= 0);
            } else {
                CHECK(evaluate(x, interval.start + 100) < 0);
            }
        }
        // Complement sampling: every grid point outside the intervals is
        // nonnegative.
        for (const Rational& t : sample_grid(x)) {
            bool inside = false;
            for (const auto& interval : intervals) {
                if (t >= interval.start &&
                    (!interval.end.is_finite() || t < interval.end.finite_value())) {
                    inside = true;
                }
            }
            if (!inside) CHECK(evaluate(x, t) >= 0);
        }
    }
}

TEST_CASE("P2 classification matches its negative_set shape") {
    std::mt19937_64 rng(17);
    GenParams params;
    int seen = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Project x = gen_project(rng, params);
        ProjectClass cls = classify(x);
        if (cls.tag == ProjectTag::P2 || cls.tag == ProjectTag::P0) {
            ++seen;
            auto intervals = negative_set(x);
            REQUIRE(intervals.size() == 1);
            CHECK(intervals[0].start == 0);
            REQUIRE(intervals[0].end.is_finite());
            CHECK(intervals[0].end.finite_value() == *cls.phase_switch);
        }
    }
    CHECK(seen > 0);
}
