#include "ppn/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace ppn {

double to_double(const Rational& r) { return static_cast<double>(r); }

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in rational literal: " + text);
        return Rational(num, den);
    }

    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    std::string digits;      // mantissa digits without the point
    long frac_digits = 0;    // digits after the point
    bool seen_point = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_point) throw Error("bad rational literal: " + text);
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            throw Error("bad rational literal: " + text);
        }
    }
    if (!seen_digit) throw Error("bad rational literal: " + text);
    long exp10 = 0;
    if (i < s.size()) {  // exponent part
        ++i;             // skip 'e'
        if (i >= s.size()) throw Error("bad rational literal: " + text);
        char* end = nullptr;
        exp10 = std::strtol(s.c_str() + i, &end, 10);
        if (end != s.c_str() + s.size()) throw Error("bad rational literal: " + text);
    }
    Integer mant(digits.empty() ? "0" : digits);
    if (neg) mant = -mant;
    long net = exp10 - frac_digits;
    Integer pow10 = 1;
    for (long k = 0; k < (net < 0 ? -net : net); ++k) pow10 *= 10;
    return net >= 0 ? Rational(mant * pow10, 1) : Rational(mant, pow10);
}

std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::string rational_to_decimal3(const Rational& r) {
    Rational scaled = r * 1000;
    Integer num = numerator(scaled), den = denominator(scaled);
    bool neg = num < 0;
    if (neg) num = -num;
    // round half away from zero
    Integer q = (2 * num + den) / (2 * den);
    std::string digits = q.str();
    while (digits.size() < 4) digits = "0" + digits;
    std::string out = digits.substr(0, digits.size() - 3) + "." + digits.substr(digits.size() - 3);
    return (neg && q != 0) ? "-" + out : out;
}

}  // namespace ppn
