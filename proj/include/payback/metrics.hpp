#pragma once

#include <optional>
#include <vector>

#include "payback/cashflow.hpp"
#include "payback/discount.hpp"

namespace payback {

enum class MetricKind { LAST_BREAKEVEN, FIRST_BREAKEVEN, MODIFIED, DISCOUNTED_LAST };

const char* to_string(MetricKind kind);

struct MetricReport {
    MetricKind kind;
    ExtendedTime value;
    std::vector<Rational> breakeven_points;
    std::optional<bool> acceptable;
};

// The payback period: inf{tau : balance nonnegative on [tau, inf)}. Equals the
// right endpoint of the last strictly-negative interval, 0 when the balance is
// nonnegative everywhere, +inf when the terminal balance is negative.
ExtendedTime payback_period(const Project& x);

// Same quantity computed through two-transaction dominance: the infimum of
// tau such that some deposit-shaped project -a*1_0 + b*1_tau (0 < a <= b) is
// dominated by x. Must agree with payback_period() on every input.
ExtendedTime payback_oracle_dominance(const Project& x);

// Brute-force grid scan over event times, midpoints, and one point past the
// last event. Exists to validate the other two routes independently.
ExtendedTime payback_oracle_grid(const Project& x);

// First break-even point: sup{tau > 0 : balance < 0 on [0, tau]}, with
// sup of the empty set taken as 0 and an unbounded set as +inf.
ExtendedTime first_breakeven(const Project& x);

// Break-even of the modified stream: inf{t : cumulative inflow >= total
// outflow}.
ExtendedTime modified_payback(const Project& x);

ExtendedTime discounted_payback(const Project& x, const DiscountFunction& alpha);

// Event times where the balance turns from negative (just before) to
// nonnegative (at the event).
std::vector<Rational> breakeven_points(const Project& x);

// Screening against a maximum acceptable payback period: metric value <= mapp.
bool is_acceptable(const Project& x, const Rational& mapp, MetricKind kind,
                   const DiscountFunction* alpha = nullptr);

// Default sign tolerance for nonnegativity decisions on approximately
// discounted balances (1e-12).
extern const Rational kApproxSignTolerance;

}  // namespace payback
