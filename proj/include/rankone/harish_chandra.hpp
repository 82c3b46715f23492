#pragma once

#include "rankone/series_tail.hpp"
#include "rankone/space.hpp"
#include "rankone/special_functions.hpp"
#include "rankone/spectral_param.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace rankone {

/// Range of the second (m_2gamma) sum in the coefficient recursion
///   (k+1)(k+1-i lambda) G_{k+1} = sum_{j<=k} (m_gamma/2)(rho+2j-i lambda) G_j
///                                + sum_{j=k+1-2l} m_2gamma (rho+2j-i lambda) G_j.
enum class RecursionVariant {
    kA, // l >= 1 only
    kB, // l >= 0, with the j = k+1 term moved to the left-hand side
};
std::string_view to_string(RecursionVariant variant);

/// Shipped default; variant B disagrees with the radial ODE when m_2gamma > 0.
inline constexpr RecursionVariant kDefaultRecursion = RecursionVariant::kA;

struct HCCoefficients {
    SpectralParam lambda;
    std::vector<Complex> values; // G_0 .. G_K, G_0 = 1
    RecursionVariant variant;
};

/// G_0..G_K in O(K) using running (and parity-split) sums.
/// Throws ExcludedParameter for lambda in i*Z, NumericalFailure on overflow
/// (naming the first failing k) or on a vanishing variant-B divisor.
HCCoefficients gamma_coefficients(const RankOneSpace& space, SpectralParam lambda, int K,
                                  RecursionVariant variant = kDefaultRecursion);

/// Harish-Chandra series Phi_lambda(a_t) = e^{(i lambda - rho)t} sum_k G_k e^{-2kt},
/// truncated so that the fitted-growth tail bound is below tol relative to the
/// partial sum for every t >= t_min. The coefficient table is built once.
class HarishChandraSeries {
  public:
    HarishChandraSeries(const RankOneSpace& space, SpectralParam lambda, double tol = 1e-10, double t_min = 0.5,
                        RecursionVariant variant = kDefaultRecursion);

    SpectralParam lambda() const { return coefficients_.lambda; }
    Complex exponent() const { return exponent_; } // i lambda - rho
    const HCCoefficients& coefficients() const { return coefficients_; }
    const PolynomialBound& bound() const { return bound_; }
    double t_min() const { return t_min_; }

    /// sum_k G_k e^{-2kt} = e^{-(i lambda - rho)t} Phi_lambda(a_t).
    /// Throws InvalidArgument for t < t_min.
    Complex scaled(double t) const;
    Complex value(double t) const;
    /// log |Phi_lambda(a_t)| without forming the exponential.
    double log_abs(double t) const;
    /// Tail bound after the stored coefficients, at t.
    double tail_bound(double t) const;

  private:
    HCCoefficients coefficients_;
    Complex exponent_;
    double tol_;
    double t_min_;
    PolynomialBound bound_;
};

/// One-shot Phi_lambda(a_t).
Complex phi_big(const RankOneSpace& space, SpectralParam lambda, double t, double tol = 1e-10, double t_min = 0.5);

/// lambda-dependence of the c-function.
enum class CFunctionForm {
    /// 2^{-i lambda} G(i lambda) / [G((m_gamma/2 + 1 + i lambda)/2) G((m_gamma/2 + m_2gamma + i lambda)/2)]
    kStandard,
    /// G(i lambda) G((m_gamma + i lambda)/2) / [G(m_gamma/2 + i lambda) G((rho + i lambda)/2)]
    kAlternateArrangement,
};
std::string_view to_string(CFunctionForm form);

/// Uncalibrated lambda-dependent factor. PoleError for lambda in i*Z_{>=0}.
Complex c_function_shape(const RankOneSpace& space, SpectralParam lambda, CFunctionForm form = CFunctionForm::kStandard);

/// Normalization constant kappa of c = kappa * shape, fitted once per (space, form)
/// so that the series expansion reproduces the forward-integrated spherical
/// function at t_ref for lambda_ref.
struct CFunctionCalibration {
    Complex kappa;
    Complex kappa_analytic; // 1 / shape(-i rho), from c(-i rho) = 1
    Complex lambda_ref;
    double t_ref;
};

inline constexpr double kCalibrationTime = 6.0;
inline const Complex kCalibrationLambda{0.5, -1.5};

/// Thread-safe; the calibration for each (space, form) runs exactly once.
const CFunctionCalibration& c_function_calibration(const RankOneSpace& space,
                                                   CFunctionForm form = CFunctionForm::kStandard);

/// c(lambda) = kappa * shape(lambda). ExcludedParameter for lambda in -i*Z_{>0},
/// PoleError for lambda in i*Z_{>=0}.
Complex c_function(const RankOneSpace& space, SpectralParam lambda, CFunctionForm form = CFunctionForm::kStandard);

/// Compares a c-function form against the ODE limit e^{-(i lambda - rho)t} phi(a_t)
/// at t = 15 on the supplied lambdas (Im lambda < 0).
struct CFormValidation {
    CFunctionForm form;
    double max_relative_error;
    bool verified; // max_relative_error <= 1e-6
};
CFormValidation validate_c_form(const RankOneSpace& space, CFunctionForm form, std::span<const Complex> lambdas);

/// phi_lambda(a_t) = c(lambda) Phi_lambda(a_t) + c(-lambda) Phi_{-lambda}(a_t),
/// with both series built once.
class SphericalPhiSeries {
  public:
    SphericalPhiSeries(const RankOneSpace& space, SpectralParam lambda, double tol = 1e-10, double t_min = 0.5);

    Complex c_plus() const { return c_plus_; }   // c(lambda)
    Complex c_minus() const { return c_minus_; } // c(-lambda)
    const HarishChandraSeries& plus() const { return plus_; }
    const HarishChandraSeries& minus() const { return minus_; }

    Complex value(double t) const;
    /// log |phi_lambda(a_t)|, factoring out the dominant exponential.
    double log_abs(double t) const;

  private:
    HarishChandraSeries plus_;
    HarishChandraSeries minus_;
    Complex c_plus_;
    Complex c_minus_;
};

Complex spherical_phi_series(const RankOneSpace& space, SpectralParam lambda, double t, double tol = 1e-10,
                             double t_min = 0.5);

} // namespace rankone
