#include "payback/discount.hpp"

namespace payback {

namespace {

Rational rational_pow(const Rational& base, const BigInt& exponent) {
    if (exponent < 0) {
        if (base == 0) throw DiscountError("zero base with negative exponent");
        return 1 / rational_pow(base, -exponent);
    }
    Rational result = 1;
    Rational b = base;
    BigInt e = exponent;
    while (e > 0) {
        if ((e & 1) != 0) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

BigInt pow10(unsigned k) {
    BigInt p = 1;
    for (unsigned i = 0; i < k; ++i) p *= 10;
    return p;
}

}  // namespace

DiscountFunction DiscountFunction::identity() {
    return DiscountFunction();
}

DiscountFunction DiscountFunction::table(
    const std::vector<std::pair<Rational, Rational>>& entries) {
    DiscountFunction f;
    f.form_ = Form::TABLE;
    for (const auto& [t, v] : entries) {
        if (t < 0) throw DiscountError("discount table time must be nonnegative");
        if (v <= 0) throw DiscountError("discount factor must be positive at t=" + to_string(t));
        auto [it, inserted] = f.entries_.emplace(t, v);
        if (!inserted && it->second != v) {
            throw DiscountError("conflicting table entries at t=" + to_string(t));
        }
    }
    auto at_zero = f.entries_.find(Rational(0));
    if (at_zero == f.entries_.end()) {
        f.entries_.emplace(Rational(0), Rational(1));
    } else if (at_zero->second != 1) {
        throw DiscountError("discount table must map 0 to 1");
    }
    return f;
}

DiscountFunction DiscountFunction::exponential(const Rational& rate, unsigned precision_digits) {
    if (rate <= -1) throw DiscountError("exponential rate must exceed -1");
    if (precision_digits == 0) throw DiscountError("precision must be positive");
    DiscountFunction f;
    f.form_ = Form::EXPONENTIAL;
    f.rate_ = rate;
    f.precision_digits_ = precision_digits;
    return f;
}

bool DiscountFunction::exact_at(const Rational& t) const {
    return form_ != Form::EXPONENTIAL || is_integer(t);
}

DiscountFunction::Factor DiscountFunction::factor_at(const Rational& t) const {
    if (t < 0) throw DiscountError("discount factor queried at negative time");
    switch (form_) {
        case Form::IDENTITY:
            return {Rational(1), true};
        case Form::TABLE: {
            auto it = entries_.find(t);
            if (it == entries_.end()) {
                throw DiscountError("discount table has no entry at t=" + to_string(t));
            }
            return {it->second, true};
        }
        case Form::EXPONENTIAL: {
            const Rational base = 1 + rate_;  // > 0
            if (is_integer(t)) {
                return {rational_pow(base, -numerator(t)), true};
            }
            // base^(-p/q) = (1/base)^(p/q); approximate the q-th root to the
            // configured number of decimal digits.
            const BigInt p = numerator(t);
            const unsigned q = denominator(t).convert_to<unsigned>();
            const Rational powered = rational_pow(1 / base, p);
            const BigInt scale = pow10(precision_digits_);
            BigInt scale_q = 1;
            for (unsigned i = 0; i < q; ++i) scale_q *= scale;
            BigInt scaled = numerator(powered) * scale_q / denominator(powered);
            BigInt root = integer_nth_root(scaled, q);
            return {Rational(root, scale), false};
        }
    }
    throw DiscountError("unreachable discount form");
}

DiscountFunction DiscountFunction::inverse() const {
    switch (form_) {
        case Form::IDENTITY:
            return identity();
        case Form::TABLE: {
            std::vector<std::pair<Rational, Rational>> inv;
            inv.reserve(entries_.size());
            for (const auto& [t, v] : entries_) inv.emplace_back(t, 1 / v);
            return table(inv);
        }
        case Form::EXPONENTIAL:
            // base 1+r maps to base 1/(1+r), i.e. rate -r/(1+r).
            return exponential(-rate_ / (1 + rate_), precision_digits_);
    }
    throw DiscountError("unreachable discount form");
}

std::vector<Rational> DiscountFunction::table_times() const {
    std::vector<Rational> times;
    times.reserve(entries_.size());
    for (const auto& [t, _] : entries_) times.push_back(t);
    return times;
}

Project discount_stream(const Project& x, const DiscountFunction& alpha) {
    std::vector<Event> raw;
    raw.reserve(x.size());
    for (const Event& e : x.events()) {
        raw.push_back(Event{e.time, e.amount * alpha.factor_at(e.time).value});
    }
    return make_project(raw);
}

bool discounting_is_approximate(const Project& x, const DiscountFunction& alpha) {
    for (const Event& e : x.events()) {
        if (!alpha.exact_at(e.time)) return true;
    }
    return false;
}

}  // namespace payback
