#pragma once

#include "rankone/special_functions.hpp"

namespace rankone {

/// Complex spectral parameter lambda; the Laplace-Beltrami eigenvalue is
/// -(lambda^2 + rho^2).
class SpectralParam {
  public:
    /// Tolerance for "Re = 0", "Im is an integer" and "Im = 0" decisions.
    static constexpr double kTolerance = 1e-12;

    explicit SpectralParam(Complex lambda);
    explicit SpectralParam(double re, double im = 0.0)
        : SpectralParam(Complex(re, im))
    {
    }

    Complex value() const { return lambda_; }
    double re() const { return lambda_.real(); }
    double im() const { return lambda_.imag(); }

    /// True iff lambda lies in i*Z (within kTolerance).
    bool is_excluded() const;
    bool is_real() const;
    bool is_upper() const; // Im > 0
    bool is_lower() const; // Im < 0

    SpectralParam negated() const { return SpectralParam(-lambda_); }

    /// Throws ExcludedParameter when is_excluded().
    void require_admissible() const;

  private:
    Complex lambda_;
};

} // namespace rankone
