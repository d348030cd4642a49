#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "payback/rational.hpp"

namespace payback {

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One dated net cash flow: the coefficient-and-shift pair of a step term.
struct Event {
    Rational time;
    Rational amount;

    bool operator==(const Event&) const = default;
};

// A finite event list in canonical form: sorted by strictly increasing time,
// same-time amounts merged, zero net amounts dropped. The balance at t is the
// sum of amounts with time <= t (right-continuous step function), so equality
// of the canonical form coincides with equality of balance functions.
class Project {
public:
    Project() = default;  // the zero project

    const std::vector<Event>& events() const { return events_; }
    bool is_zero() const { return events_.empty(); }
    std::size_t size() const { return events_.size(); }

    bool operator==(const Project&) const = default;

private:
    explicit Project(std::vector<Event> normalized) : events_(std::move(normalized)) {}
    std::vector<Event> events_;

    friend Project make_project(const std::vector<Event>& raw_events);
};

// Nonnegative rational time or +infinity (the payback codomain).
class ExtendedTime {
public:
    ExtendedTime(Rational value) : value_(std::move(value)) {}

    static ExtendedTime infinity() { return ExtendedTime(); }

    bool is_finite() const { return value_.has_value(); }
    const Rational& finite_value() const {
        if (!value_) throw std::logic_error("finite_value() on +inf");
        return *value_;
    }

    friend bool operator==(const ExtendedTime& a, const ExtendedTime& b) {
        return a.value_ == b.value_;
    }
    friend bool operator<(const ExtendedTime& a, const ExtendedTime& b) {
        if (!a.value_) return false;             // +inf is maximal
        if (!b.value_) return true;
        return *a.value_ < *b.value_;
    }
    friend bool operator<=(const ExtendedTime& a, const ExtendedTime& b) { return !(b < a); }
    friend bool operator>(const ExtendedTime& a, const ExtendedTime& b) { return b < a; }
    friend bool operator>=(const ExtendedTime& a, const ExtendedTime& b) { return !(a < b); }

    std::string str() const { return value_ ? to_string(*value_) : "inf"; }

private:
    ExtendedTime() = default;
    std::optional<Rational> value_;
};

ExtendedTime max(const ExtendedTime& a, const ExtendedTime& b);

// Maximal interval of strictly negative balance; end is +inf when the balance
// never recovers.
struct NegativeInterval {
    Rational start;
    ExtendedTime end;

    bool operator==(const NegativeInterval&) const = default;
};

enum class ProjectTag { ZERO, NONNEGATIVE, P0, P2, P1, GENERAL };

// Most specific structural class of a project. P0 (two-transaction deposit
// shape) and P2 (single recovery point) carry the phase switch tau at which
// the balance turns nonnegative for good.
struct ProjectClass {
    ProjectTag tag = ProjectTag::GENERAL;
    std::optional<Rational> phase_switch;
};

const char* to_string(ProjectTag tag);

// Normalizes a raw event list into canonical form. Rejects negative times.
Project make_project(const std::vector<Event>& raw_events);

// Balance at time t (sum of amounts dated <= t). Rejects t < 0.
Rational evaluate(const Project& x, const Rational& t);

Project add(const Project& x, const Project& y);
Project scale(const Project& x, const Rational& lambda);
Project negate(const Project& x);

// Pointwise order on balances: true iff x(t) <= y(t) for all t >= 0.
bool dominates(const Project& x, const Project& y);

// Maximal intervals of strictly negative balance, in increasing order.
std::vector<NegativeInterval> negative_set(const Project& x);

ProjectClass classify(const Project& x);

// Membership in the class of projects with x(0) < 0, nondecreasing balance,
// and recovery at some finite time. (A subset of P2; needed on its own by the
// axiom harness's restricted functional.)
bool is_p1(const Project& x);

// Balance after the last event (0 for the zero project).
Rational terminal_value(const Project& x);

// All event times plus midpoints between consecutive event times plus one
// point past the last event. Balances are constant between events, so this
// grid decides every pointwise quantifier over t.
std::vector<Rational> sample_grid(const Project& x);

}  // namespace payback
