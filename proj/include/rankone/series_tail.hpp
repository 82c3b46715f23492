#pragma once

#include "rankone/special_functions.hpp"

#include <span>

namespace rankone {

/// |a_k| <= c * k^d for 1 <= k <= K on the fitted prefix.
struct PolynomialBound {
    double c = 1.0;
    double d = 0.0;
};

/// Least-squares fit of log|a_k| against log k over 2 <= k <= K, then c raised
/// so the bound holds on every computed k >= 1. d is clamped to >= 0.
PolynomialBound fit_polynomial_growth(std::span<const Complex> coefficients);

/// Bound on sum_{k > K} c k^d x^k with x = e^{-2t}:
///   c (K+1)^d x^{K+1} / (1 - x) * (1 + d / (2t(K+1))).
double exponential_series_tail(const PolynomialBound& bound, int K, double t);

} // namespace rankone
