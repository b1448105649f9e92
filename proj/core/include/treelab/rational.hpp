#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace treelab {

/// Exact rational arithmetic. All function values, thresholds and
/// tolerances in the library are rationals; no floating point is used in
/// any verdict.
using Rat = boost::rational<long long>;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

/// Parses "p/q" or a plain integer. Throws std::invalid_argument on
/// malformed input or a zero denominator.
inline Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            long long v = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
            return Rat(v);
        }
        std::size_t used_n = 0, used_d = 0;
        long long num = std::stoll(text.substr(0, slash), &used_n);
        long long den = std::stoll(text.substr(slash + 1), &used_d);
        if (used_n != slash || used_d != text.size() - slash - 1)
            throw std::invalid_argument("trailing characters");
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const boost::bad_rational&) {
        throw std::invalid_argument("bad rational literal: " + text);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// floor(r) as an integer, correct for negative values.
inline long long rat_floor(const Rat& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && (r.numerator() < 0) != (r.denominator() < 0)) --q;
    return q;
}

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace treelab
