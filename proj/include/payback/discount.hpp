#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "payback/cashflow.hpp"
#include "payback/rational.hpp"

namespace payback {

class DiscountError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Positive factor map alpha with alpha(0) = 1. Three forms:
//   IDENTITY     — alpha == 1 everywhere.
//   TABLE        — exact rational factors at tabulated times only.
//   EXPONENTIAL  — alpha(t) = (1 + rate)^(-t); exact at integer t, otherwise a
//                  rational approximation correct to `precision_digits`.
// Factors above 1 are allowed (preference for future payoffs).
class DiscountFunction {
public:
    enum class Form { IDENTITY, TABLE, EXPONENTIAL };

    struct Factor {
        Rational value;
        bool exact;
    };

    static DiscountFunction identity();
    // 0 -> 1 is implied when absent; explicit entries must agree.
    static DiscountFunction table(const std::vector<std::pair<Rational, Rational>>& entries);
    static DiscountFunction exponential(const Rational& rate, unsigned precision_digits = 12);

    Form form() const { return form_; }
    bool exact_form() const { return form_ != Form::EXPONENTIAL; }
    bool exact_at(const Rational& t) const;

    Factor factor_at(const Rational& t) const;
    DiscountFunction inverse() const;

    // TABLE only: the times at which a factor is defined.
    std::vector<Rational> table_times() const;
    const Rational& rate() const { return rate_; }
    unsigned precision_digits() const { return precision_digits_; }

private:
    DiscountFunction() = default;
    Form form_ = Form::IDENTITY;
    std::map<Rational, Rational> entries_;
    Rational rate_ = 0;
    unsigned precision_digits_ = 12;
};

// x^(alpha): each event amount scaled by the factor at its own time.
Project discount_stream(const Project& x, const DiscountFunction& alpha);

// True when discount_stream(x, alpha) involves an approximate factor.
bool discounting_is_approximate(const Project& x, const DiscountFunction& alpha);

}  // namespace payback
