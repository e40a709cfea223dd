#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace planner {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Exact conversion for values with a short decimal expansion (costs, efficiencies
// from config files). Rejects anything that does not round-trip.
inline Rational rational_from_double(double value, std::int64_t max_denominator = 1000000000LL) {
    if (!std::isfinite(value))
        throw std::invalid_argument("rational_from_double: non-finite value");
    std::int64_t den = 1;
    double scaled = value;
    while (den <= max_denominator) {
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) < 1e-9 * std::max(1.0, std::abs(scaled)))
            return Rational(static_cast<std::int64_t>(rounded), den);
        den *= 10;
        scaled = value * static_cast<double>(den);
    }
    throw std::invalid_argument("rational_from_double: " + std::to_string(value) +
                                " has no short exact representation");
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace planner
