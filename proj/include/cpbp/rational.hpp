#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace cpbp {

// Exact rational arithmetic throughout; LP values and bound chains must never
// pass through floating point.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q" or a plain decimal such as "64.725".
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rat r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rat r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
        return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("bad decimal literal: " + s);
    mpz_class num;
    if (num.set_str(digits, 10) != 0)
        throw std::invalid_argument("bad decimal literal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Canonical "p/q" (or "p" for integers).
inline std::string rat_str(const Rat& r) { return r.get_str(); }

/// Decimal rendering: exact digits when the expansion terminates, otherwise
/// the repetend in parentheses, e.g. 25/3 -> "8.(3)", 53/5 -> "10.6".
inline std::string decimal_str(const Rat& r) {
    mpz_class num = r.get_num(), den = r.get_den();
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    mpz_class ipart = num / den;
    mpz_class rem = num % den;
    std::string out = sign + ipart.get_str();
    if (rem == 0) return out;
    out += ".";
    // long division, remembering remainders to detect the cycle
    std::map<std::string, size_t> seen;
    std::string digits;
    while (rem != 0) {
        std::string key = rem.get_str();
        auto it = seen.find(key);
        if (it != seen.end()) {
            digits.insert(it->second, "(");
            digits += ")";
            break;
        }
        seen[key] = digits.size();
        rem *= 10;
        mpz_class d = rem / den;
        digits += d.get_str();
        rem %= den;
    }
    return out + digits;
}

/// Fixed 6-decimal rendering (rounded toward zero) used as a float companion
/// alongside exact values in JSON output.
inline std::string decimal6_str(const Rat& r) {
    mpz_class scaled = (r.get_num() * 1000000) / r.get_den();
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string s = scaled.get_str();
    while (s.size() < 7) s.insert(s.begin(), '0');
    std::string out = s.substr(0, s.size() - 6) + "." + s.substr(s.size() - 6);
    return (neg ? "-" : "") + out;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace cpbp
