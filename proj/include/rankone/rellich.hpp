#pragma once

#include "rankone/harish_chandra.hpp"
#include "rankone/radial_ode.hpp"
#include "rankone/space.hpp"
#include "rankone/spectral_param.hpp"

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace rankone {

/// gamma_p = 2/p - 1 for p in [1, inf]; gamma_inf = -1.
double gamma_p(double p);

enum class ModelKind {
    kPhi,         // spherical function phi_lambda
    kBigPhiPlus,  // Phi_lambda
    kBigPhiMinus, // Phi_{-lambda}
    kMode,        // single (p,q) radial mode, unit-norm angular factor
};
std::string_view to_string(ModelKind kind);

/// Exterior eigenfunction whose K-mean of |f|^p at radius t is |g(t)|^p for
/// a radial profile g. Profiles are evaluated from their series (t >= 0.5).
class ModelEigenfunction {
  public:
    static ModelEigenfunction spherical(const RankOneSpace& space, SpectralParam lambda);
    static ModelEigenfunction big_phi_plus(const RankOneSpace& space, SpectralParam lambda);
    static ModelEigenfunction big_phi_minus(const RankOneSpace& space, SpectralParam lambda);
    /// The frame solution of the mode with exponent +-i lambda - rho.
    static ModelEigenfunction mode(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                                   FrameBranch branch = FrameBranch::kPlus);

    ModelKind kind() const { return kind_; }
    const RankOneSpace& space() const { return space_; }
    SpectralParam lambda() const { return lambda_; }
    std::optional<ModeIndex> mode_index() const { return mode_; }
    std::optional<FrameBranch> branch() const { return branch_; }

    /// log |g(t)|; -inf at exact zeros.
    double log_abs(double t) const;

    struct Profile; // radial profile evaluator, defined in the implementation

  private:
    ModelEigenfunction(ModelKind kind, const RankOneSpace& space, SpectralParam lambda,
                       std::shared_ptr<const Profile> profile);

    ModelKind kind_;
    RankOneSpace space_;
    SpectralParam lambda_;
    std::optional<ModeIndex> mode_;
    std::optional<FrameBranch> branch_;
    std::shared_ptr<const Profile> profile_;
};

/// A positive quantity stored as mantissa * e^{exponent}.
struct LogMass {
    double mantissa;
    double exponent;

    double log() const;
};

/// int_R^{2R} |g(t)|^p J(t) dt, integrated with the integrand shifted by its
/// sampled maximum in log space. Throws InvalidArgument for R < 1 or p < 1 or
/// infinite p; NumericalFailure if the quadrature misses tol.
LogMass annulus_mass(const ModelEigenfunction& f, double p, double R, double tol = 1e-8);

enum class GrowthClass { kExponentialGrowth, kLinear, kExponentialDecay, kIndeterminate };
std::string_view to_string(GrowthClass cls);

/// Envelope of |C1 e^{i lambda t} + C2 e^{-i lambda t}|^2 for real lambda.
struct OscillationEnvelope {
    double min_sq;
    double max_sq;
    double period;
};
OscillationEnvelope oscillation_envelope(Complex c1, Complex c2, double lambda_real);

struct ClassifyOptions {
    double dead_band = 0.02;
    double linear_ratio_low = 1.5;
    double linear_ratio_high = 2.5;
    double linear_window_start = 8.0; // ratio test uses grid R >= this (all R if none)
    double tol = 1e-8;
};

struct GrowthReport {
    ModelKind kind;
    double p_exponent;
    std::vector<double> R_grid;
    std::vector<LogMass> masses;
    /// Exponential rate s of the integrand, fitted by least squares of log M(R)
    /// against a + log int_R^{2R} e^{s t} dt.
    double fitted_rate;
    double predicted_rate;
    GrowthClass predicted_class;
    GrowthClass measured_class;
    /// M(2R)/M(R) for the grid points used by the linearity test.
    std::vector<double> linear_ratios;
    /// Set when the profile oscillates (phi with real lambda).
    std::optional<OscillationEnvelope> envelope;
};

/// Rate of |g(t)|^p J(t) predicted from the profile's asymptotic exponent:
/// p(gamma_p rho - Im lambda) for Phi_lambda, p(gamma_p rho + Im lambda) for
/// Phi_{-lambda}, p(gamma_p rho + |Im lambda|) for phi with Im lambda != 0.
double predicted_rate(const ModelEigenfunction& f, double p);
/// Growth/decay by the sign of the predicted rate, Linear within 1e-9 of 0;
/// Indeterminate for phi with real lambda and p != 2 (oscillating masses).
GrowthClass predicted_class(const ModelEigenfunction& f, double p);

/// Requires >= 6 increasing R values with min >= 4.
GrowthReport classify(const ModelEigenfunction& f, double p, std::span<const double> R_grid,
                      const ClassifyOptions& options = {});

/// w in {z^2 + rho^2 : |Im z| <= |2/p - 1| rho}, boundary included (1e-12 slack).
bool lp_spectrum_contains(const RankOneSpace& space, double p, Complex w);

/// psi_lambda(a_t) = e^{(-|Im lambda| - rho) t}.
double psi(const RankOneSpace& space, SpectralParam lambda, double t);

struct HardyResult {
    double sup_value;            // sup_t t^eps |g(t)| / psi_lambda(a_t)
    double running_sup_half;     // sup over grid t <= T_max / 2
    double running_sup_ratio;    // sup_value / running_sup_half
    double threshold;            // max(2^{eps/2}, 1.01)
    bool divergence_flag;        // running_sup_ratio >= threshold
    std::vector<double> running_sup; // per grid point
};

/// p in [1, inf]; for these profiles the K-mean (any p) is |g(t)|.
/// Throws InvalidArgument on an empty or non-increasing grid.
HardyResult hardy_functional(const ModelEigenfunction& f, double p, double eps, std::span<const double> t_grid);

} // namespace rankone
