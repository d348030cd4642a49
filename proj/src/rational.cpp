#include "payback/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace payback {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt pow10(std::size_t k) {
    BigInt p = 1;
    for (std::size_t i = 0; i < k; ++i) p *= 10;
    return p;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        throw std::invalid_argument("empty rational literal");
    }
    std::string s = text.substr(begin, end - begin + 1);

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }

    auto bad = [&text]() -> Rational {
        throw std::invalid_argument("malformed rational literal: '" + text + "'");
    };

    Rational result;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return bad();
        BigInt d(den);
        if (d == 0) return bad();
        result = Rational(BigInt(num), d);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ipart = s.substr(0, dot);
        std::string fpart = s.substr(dot + 1);
        if (ipart.empty()) ipart = "0";
        if (fpart.empty()) fpart = "0";
        if (!all_digits(ipart) || !all_digits(fpart)) return bad();
        BigInt scale = pow10(fpart.size());
        result = Rational(BigInt(ipart) * scale + BigInt(fpart), scale);
    } else {
        if (!all_digits(s)) return bad();
        result = Rational(BigInt(s));
    }
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& r) {
    return r.str();
}

bool is_integer(const Rational& r) {
    return denominator(r) == 1;
}

BigInt integer_nth_root(const BigInt& value, unsigned q) {
    if (value < 0) throw std::invalid_argument("integer_nth_root: negative input");
    if (q == 0) throw std::invalid_argument("integer_nth_root: zero degree");
    if (value == 0 || value == 1 || q == 1) return value;

    // Newton iteration on integers, seeded from the bit length.
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(value)) + 1;
    BigInt x = BigInt(1) << (bits / q + 1);
    while (true) {
        BigInt xq1 = 1;
        for (unsigned i = 0; i + 1 < q; ++i) xq1 *= x;
        BigInt next = ((q - 1) * x + value / xq1) / q;
        if (next >= x) break;
        x = next;
    }
    // x is now the floor root or one above; step down if needed.
    while (true) {
        BigInt xq = 1;
        for (unsigned i = 0; i < q; ++i) xq *= x;
        if (xq <= value) break;
        --x;
    }
    return x;
}

}  // namespace payback
