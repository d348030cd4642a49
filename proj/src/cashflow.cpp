#include "payback/cashflow.hpp"

#include <algorithm>
#include <map>

namespace payback {

ExtendedTime max(const ExtendedTime& a, const ExtendedTime& b) {
    return a < b ? b : a;
}

const char* to_string(ProjectTag tag) {
    switch (tag) {
        case ProjectTag::ZERO: return "ZERO";
        case ProjectTag::NONNEGATIVE: return "NONNEGATIVE";
        case ProjectTag::P0: return "P0";
        case ProjectTag::P2: return "P2";
        case ProjectTag::P1: return "P1";
        case ProjectTag::GENERAL: return "GENERAL";
    }
    return "GENERAL";
}

Project make_project(const std::vector<Event>& raw_events) {
    std::map<Rational, Rational> merged;
    for (const Event& e : raw_events) {
        if (e.time < 0) {
            throw ValidationError("event time must be nonnegative, got " + to_string(e.time));
        }
        merged[e.time] += e.amount;
    }
    std::vector<Event> events;
    events.reserve(merged.size());
    for (auto& [t, c] : merged) {
        if (c != 0) events.push_back(Event{t, c});
    }
    return Project(std::move(events));
}

Rational evaluate(const Project& x, const Rational& t) {
    if (t < 0) throw ValidationError("balance queried at negative time " + to_string(t));
    Rational balance = 0;
    for (const Event& e : x.events()) {
        if (e.time > t) break;
        balance += e.amount;
    }
    return balance;
}

Project add(const Project& x, const Project& y) {
    std::vector<Event> raw(x.events());
    raw.insert(raw.end(), y.events().begin(), y.events().end());
    return make_project(raw);
}

Project scale(const Project& x, const Rational& lambda) {
    std::vector<Event> raw;
    raw.reserve(x.size());
    for (const Event& e : x.events()) raw.push_back(Event{e.time, e.amount * lambda});
    return make_project(raw);
}

Project negate(const Project& x) {
    return scale(x, -1);
}

bool dominates(const Project& x, const Project& y) {
    // Balances are constant between events, so it suffices to compare at the
    // merged event times (both balances are 0 before the first event).
    std::vector<Rational> grid;
    for (const Event& e : x.events()) grid.push_back(e.time);
    for (const Event& e : y.events()) grid.push_back(e.time);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const Rational& t : grid) {
        if (evaluate(x, t) > evaluate(y, t)) return false;
    }
    return true;
}

std::vector<NegativeInterval> negative_set(const Project& x) {
    std::vector<NegativeInterval> intervals;
    Rational balance = 0;
    std::optional<Rational> open_start;
    for (const Event& e : x.events()) {
        balance += e.amount;
        if (balance < 0 && !open_start) {
            open_start = e.time;
        } else if (balance >= 0 && open_start) {
            intervals.push_back(NegativeInterval{*open_start, ExtendedTime(e.time)});
            open_start.reset();
        }
    }
    if (open_start) {
        intervals.push_back(NegativeInterval{*open_start, ExtendedTime::infinity()});
    }
    return intervals;
}

bool is_p1(const Project& x) {
    if (x.is_zero()) return false;
    if (evaluate(x, 0) >= 0) return false;
    for (const Event& e : x.events()) {
        if (e.time > 0 && e.amount < 0) return false;  // balance must be nondecreasing
    }
    return terminal_value(x) >= 0;  // nondecreasing, so recovery iff terminal >= 0
}

ProjectClass classify(const Project& x) {
    if (x.is_zero()) return {ProjectTag::ZERO, std::nullopt};

    auto negatives = negative_set(x);
    if (negatives.empty()) return {ProjectTag::NONNEGATIVE, std::nullopt};

    const auto& events = x.events();
    if (events.size() == 2 && events[0].time == 0 && events[0].amount < 0 &&
        events[1].time > 0 && -events[0].amount <= events[1].amount) {
        return {ProjectTag::P0, events[1].time};
    }
    if (negatives.size() == 1 && negatives[0].start == 0 && negatives[0].end.is_finite()) {
        return {ProjectTag::P2, negatives[0].end.finite_value()};
    }
    if (is_p1(x)) {
        // Unreachable in practice (P1 is contained in P2) but kept for the
        // stated precedence.
        return {ProjectTag::P1, negatives[0].end.is_finite()
                                    ? std::optional<Rational>(negatives[0].end.finite_value())
                                    : std::nullopt};
    }
    return {ProjectTag::GENERAL, std::nullopt};
}

Rational terminal_value(const Project& x) {
    Rational total = 0;
    for (const Event& e : x.events()) total += e.amount;
    return total;
}

std::vector<Rational> sample_grid(const Project& x) {
    std::vector<Rational> grid;
    if (x.is_zero()) {
        grid.push_back(0);
        return grid;
    }
    const auto& events = x.events();
    if (events.front().time > 0) grid.push_back(0);
    for (std::size_t i = 0; i < events.size(); ++i) {
        grid.push_back(events[i].time);
        if (i + 1 < events.size()) {
            grid.push_back((events[i].time + events[i + 1].time) / 2);
        }
    }
    grid.push_back(events.back().time + 1);
    return grid;
}

}  // namespace payback
