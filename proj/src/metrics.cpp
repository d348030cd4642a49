#include "payback/metrics.hpp"

#include <algorithm>

namespace payback {

const Rational kApproxSignTolerance = Rational(1, BigInt("1000000000000"));

const char* to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::LAST_BREAKEVEN: return "last";
        case MetricKind::FIRST_BREAKEVEN: return "first";
        case MetricKind::MODIFIED: return "modified";
        case MetricKind::DISCOUNTED_LAST: return "discounted";
    }
    return "?";
}

namespace {

// Payback with a sign tolerance: balances >= -eps count as nonnegative. With
// eps = 0 this is the exact metric.
ExtendedTime payback_with_tolerance(const Project& x, const Rational& eps) {
    if (terminal_value(x) < -eps) return ExtendedTime::infinity();
    Rational balance = 0;
    std::optional<Rational> last_negative_end;
    const auto& events = x.events();
    for (std::size_t i = 0; i < events.size(); ++i) {
        balance += events[i].amount;
        if (balance < -eps && i + 1 < events.size()) {
            last_negative_end = events[i + 1].time;
        }
    }
    return last_negative_end ? ExtendedTime(*last_negative_end) : ExtendedTime(Rational(0));
}

}  // namespace

ExtendedTime payback_period(const Project& x) {
    if (terminal_value(x) < 0) return ExtendedTime::infinity();
    auto negatives = negative_set(x);
    if (negatives.empty()) return ExtendedTime(Rational(0));
    // Terminal is nonnegative, so the last interval ends at an event time.
    return negatives.back().end;
}

ExtendedTime payback_oracle_dominance(const Project& x) {
    // tau is feasible iff some -a*1_0 + b*1_tau with 0 < a <= b is dominated
    // by x, which holds iff the balance of x is nonnegative on [tau, inf):
    // take a = b large enough to sit below x on [0, tau). Feasibility is
    // constant between events, so candidates from the sample grid suffice.
    auto feasible = [&x](const Rational& tau) {
        Rational min_before = 0;  // balance is 0 before the first event
        Rational balance = 0;
        for (const Event& e : x.events()) {
            balance += e.amount;
            if (e.time < tau) {
                min_before = std::min(min_before, balance);
            } else if (balance < 0) {
                return false;
            }
        }
        // Witness dominance explicitly with a = b = max(1, -min_before) + 1.
        Rational a = std::max(Rational(1), Rational(-min_before)) + 1;
        Project deposit = make_project({Event{0, -a}, Event{tau, a}});
        return dominates(deposit, x);
    };

    std::vector<Rational> candidates = sample_grid(x);
    bool all_feasible = true;
    std::optional<Rational> smallest;
    for (const Rational& tau : candidates) {
        if (tau <= 0) continue;
        if (feasible(tau)) {
            if (!smallest) smallest = tau;
        } else {
            all_feasible = false;
        }
    }
    if (x.is_zero()) return ExtendedTime(Rational(0));
    if (all_feasible) return ExtendedTime(Rational(0));
    if (!smallest) return ExtendedTime::infinity();
    return ExtendedTime(*smallest);
}

ExtendedTime payback_oracle_grid(const Project& x) {
    std::vector<Rational> grid = sample_grid(x);
    std::vector<Rational> balances;
    balances.reserve(grid.size());
    for (const Rational& t : grid) balances.push_back(evaluate(x, t));

    // Last grid point with negative balance; the point past the last event
    // stands in for all of [last event, inf).
    std::optional<std::size_t> last_negative;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (balances[i] < 0) last_negative = i;
    }
    if (!last_negative) return ExtendedTime(Rational(0));
    if (*last_negative == grid.size() - 1) return ExtendedTime::infinity();

    // Refine to the event time bounding the last negative interval.
    const Rational& t_neg = grid[*last_negative];
    for (const Event& e : x.events()) {
        if (e.time > t_neg) return ExtendedTime(e.time);
    }
    return ExtendedTime::infinity();
}

ExtendedTime first_breakeven(const Project& x) {
    if (evaluate(x, 0) >= 0) return ExtendedTime(Rational(0));
    Rational balance = 0;
    for (const Event& e : x.events()) {
        balance += e.amount;
        if (balance >= 0) return ExtendedTime(e.time);
    }
    return ExtendedTime::infinity();
}

ExtendedTime modified_payback(const Project& x) {
    Rational total_outflow = 0;
    for (const Event& e : x.events()) {
        if (e.amount < 0) total_outflow -= e.amount;
    }
    if (total_outflow == 0) return ExtendedTime(Rational(0));
    Rational inflow = 0;
    for (const Event& e : x.events()) {
        if (e.amount > 0) {
            inflow += e.amount;
            if (inflow >= total_outflow) return ExtendedTime(e.time);
        }
    }
    return ExtendedTime::infinity();
}

ExtendedTime discounted_payback(const Project& x, const DiscountFunction& alpha) {
    Project discounted = discount_stream(x, alpha);
    if (discounting_is_approximate(x, alpha)) {
        return payback_with_tolerance(discounted, kApproxSignTolerance);
    }
    return payback_period(discounted);
}

std::vector<Rational> breakeven_points(const Project& x) {
    std::vector<Rational> points;
    Rational before = 0;
    for (const Event& e : x.events()) {
        Rational at = before + e.amount;
        if (before < 0 && at >= 0) points.push_back(e.time);
        before = at;
    }
    return points;
}

bool is_acceptable(const Project& x, const Rational& mapp, MetricKind kind,
                   const DiscountFunction* alpha) {
    if (mapp <= 0) throw ValidationError("MAPP must be positive");
    ExtendedTime value = [&]() -> ExtendedTime {
        switch (kind) {
            case MetricKind::LAST_BREAKEVEN: return payback_period(x);
            case MetricKind::FIRST_BREAKEVEN: return first_breakeven(x);
            case MetricKind::MODIFIED: return modified_payback(x);
            case MetricKind::DISCOUNTED_LAST:
                if (!alpha) throw ValidationError("discounted screening needs a discount function");
                return discounted_payback(x, *alpha);
        }
        throw ValidationError("unknown metric kind");
    }();
    return value <= ExtendedTime(mapp);
}

}  // namespace payback
