#pragma once

#include <complex>
#include <string_view>

namespace rankone {

using Complex = std::complex<double>;

/// Throws InvalidArgument when either component of z is NaN or infinite.
void require_finite(Complex z, std::string_view what);

/// Gamma function for complex argument.
///
/// Lanczos approximation (g = 7, 9 terms) on Re z >= 1/2, reflection
/// Gamma(z) Gamma(1-z) = pi / sin(pi z) below. Relative error stays under
/// 1e-12 for |z| <= 50. Throws PoleError within 1e-14 of 0, -1, -2, ...
Complex complex_gamma(Complex z);

struct Hyp2F1Options {
    double tol = 1e-13;     // stop when the tail bound drops below tol * |partial sum|
    int max_terms = 100000; // ConvergenceError beyond this
};

/// Gauss hypergeometric series 2F1(a, b; c; z) for complex parameters and real
/// 0 <= z < 1. Direct summation with a rigorous geometric tail bound; no
/// analytic continuation. Throws PoleError if c is a nonpositive integer.
Complex gauss_2f1(Complex a, Complex b, Complex c, double z, const Hyp2F1Options& options = {});

} // namespace rankone
