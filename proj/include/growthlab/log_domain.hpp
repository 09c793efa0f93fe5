#pragma once

#include <cmath>
#include <initializer_list>

namespace growthlab {

/// One factor base^exponent of a power product. base must be > 0.
struct PowTerm {
    double base;
    double exponent;
};

/// Evaluates prod_i base_i^exponent_i as exp(sum_i exponent_i * log(base_i)).
///
/// Chained std::pow calls compound rounding at every step; accumulating in
/// the log domain keeps the error at a couple of ulps of the final exponent,
/// which matters once outer exponents like 1/b3 = 5 blow small relative
/// errors up by the same factor.
inline double log_weighted_product(std::initializer_list<PowTerm> terms) {
    double acc = 0.0;
    for (const PowTerm& t : terms) acc += t.exponent * std::log(t.base);
    return std::exp(acc);
}

/// Same accumulation, but returns the log itself.
inline double log_weighted_sum(std::initializer_list<PowTerm> terms) {
    double acc = 0.0;
    for (const PowTerm& t : terms) acc += t.exponent * std::log(t.base);
    return acc;
}

/// base^exponent for positive base, evaluated in the log domain.
inline double pow_pos(double base, double exponent) {
    return std::exp(exponent * std::log(base));
}

}  // namespace growthlab
