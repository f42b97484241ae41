#include "hyper_ricci/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace hyper_ricci {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    Rational value{std::string(s)};
    return negative ? Rational(-value) : value;
}

Rational pow10(long exponent) {
    Rational base(10);
    Rational result(1);
    long e = exponent < 0 ? -exponent : exponent;
    for (long i = 0; i < e; ++i) result *= base;
    return exponent < 0 ? Rational(1 / result) : result;
}

Rational parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        exponent = std::stol(std::string(s.substr(epos + 1)));
        s = s.substr(0, epos);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty()))
            throw std::invalid_argument("malformed decimal");
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed number");
        digits = std::string(s);
    }
    Rational value = Rational(digits) * pow10(exponent);
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    try {
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            Rational num = parse_integer(trim(s.substr(0, slash)));
            Rational den = parse_integer(trim(s.substr(slash + 1)));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return num / den;
        }
        return parse_decimal(s);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("cannot parse rational '" + std::string(text) + "': " + e.what());
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    }
}

std::string to_string(const Rational& q) {
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace hyper_ricci
