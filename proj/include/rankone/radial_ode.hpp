#pragma once

#include "rankone/ode.hpp"
#include "rankone/series_tail.hpp"
#include "rankone/space.hpp"
#include "rankone/special_functions.hpp"
#include "rankone/spectral_param.hpp"

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace rankone {

/// Angular mode (p, q) entering the radial equation through the K-type
/// eigenvalues. q >= p >= 0, and p = 0 on spaces with m_2gamma = 0.
struct ModeIndex {
    int p = 0;
    int q = 0;

    bool is_trivial() const { return p == 0 && q == 0; }
    /// Throws InvalidArgument when the invariants fail for `space`.
    void validate(const RankOneSpace& space) const;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Radial operator u'' + A(t) u' + (B(t) + lambda^2 + rho^2) u with
///   A(t) = m_gamma coth t + 2 m_2gamma coth 2t
///   B(t) = p(p+m_2gamma-1)/cosh^2 t - q(q+m_gamma+m_2gamma-1)/sinh^2 t
struct RadialCoefficients {
    double first_order; // A(t)
    double potential;   // B(t)
};

/// Throws InvalidArgument for t <= 0 (regular singular point).
RadialCoefficients radial_operator_coefficients(const RankOneSpace& space, ModeIndex mode, double t);

/// u'' = -A u' - (B + lambda^2 + rho^2) u as a first-order system.
ode::SecondOrderRhs radial_rhs(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode);

enum class SolutionMethod { kForwardOde, kFramePlus, kFrameMinus, kHypergeometric };
std::string_view to_string(SolutionMethod method);

/// Solutions whose finite-difference residual exceeds this are flagged invalid.
inline constexpr double kResidualLimit = 1e-5;

/// A radial solution sampled on a grid, with its derivative.
struct RadialSolution {
    RankOneSpace space;
    SpectralParam lambda;
    ModeIndex mode;
    std::vector<double> grid;
    std::vector<Complex> u;
    std::vector<Complex> du;
    SolutionMethod method;
    double residual_sup;

    bool valid() const { return residual_sup <= kResidualLimit; }
    /// Index of the grid point equal to t (within 1e-12); throws otherwise.
    std::size_t index_of(double t) const;
    Complex value_at(double t) const { return u[index_of(t)]; }
    Complex derivative_at(double t) const { return du[index_of(t)]; }
};

struct ForwardOptions {
    double t0 = 1e-3; // start of integration; data from the Frobenius expansion
    double rel_tol = 1e-12;
};

/// Regular solution, integrated outward from the origin. Normalized as
/// u ~ t^q near 0; for the trivial mode this is the spherical function
/// (u(0) = 1). Grid points must satisfy t >= t0.
RadialSolution solve_forward(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                             std::span<const double> grid, const ForwardOptions& options = {});

/// Asymptotic series of the frame solution with exponent mu = i s - rho:
///   u(t) = e^{mu t} sum_k a_k e^{-2kt},  a_0 = 1.
/// For the trivial mode the a_k are the Harish-Chandra coefficients Gamma_k(s).
/// Converges for t > 0; evaluation is restricted to t >= t_min.
class ModeSeries {
  public:
    ModeSeries(const RankOneSpace& space, Complex s, ModeIndex mode, double tol = 1e-14, double t_min = 0.5);

    Complex exponent() const { return exponent_; }
    std::span<const Complex> coefficients() const { return coefficients_; }

    /// sum_k a_k e^{-2kt}, i.e. e^{-mu t} u(t).
    Complex scaled(double t) const;
    /// d/dt of scaled(t).
    Complex scaled_derivative(double t) const;
    Complex value(double t) const;
    Complex derivative(double t) const;

  private:
    void check_domain(double t) const;

    Complex exponent_;
    double tol_;
    double t_min_;
    std::vector<Complex> coefficients_;
    PolynomialBound bound_;
};

enum class FrameBranch { kPlus, kMinus }; // exponent +i lambda - rho or -i lambda - rho

struct FrameOptions {
    double t_max = 30.0;
    double t_min = 0.5;
    double rel_tol = 1e-12;
};

struct FramePair {
    RadialSolution plus;  // ~ e^{(i lambda - rho) t}
    RadialSolution minus; // ~ e^{(-i lambda - rho) t}
};

/// Frame solutions normalized by e^{-(+-i lambda - rho) t} u(t) -> 1.
///
/// A frame that is recessive in the backward direction is integrated backward
/// from t_max with asymptotic-series data. A frame that dominates in the
/// backward direction (exponentially unstable that way) is integrated forward
/// from the lowest grid point instead, starting from the same series.
/// Throws ExcludedParameter for lambda in i*Z and NumericalFailure for real
/// |lambda| < 1e-6.
FramePair frame_solutions(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                          std::span<const double> grid, const FrameOptions& options = {});

/// Parameter sets for the hypergeometric representation of the frames.
enum class HypergeometricParameters {
    kPrinted,   // a = (q-l+p)/2 for the + branch; the - branch uses the alternate printed arrangement
    kTabulated, // a = (q-l-p)/2, b, c as tabulated, with the standard connection at z = 1
    kCorrected, // a = (q-l+p)/2, b = (q-l-p-m_2gamma+1)/2, c = q + (m_gamma+m_2gamma+1)/2
};
std::string_view to_string(HypergeometricParameters params);

/// (tanh t)^q (2 cosh t)^{mu} 2F1(., .; .; 1/cosh^2 t) for the chosen branch,
/// mu = +-i lambda - rho. Normalized so that e^{-mu t} * value -> 1.
Complex hypergeometric_candidate(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode, double t,
                                 FrameBranch branch,
                                 HypergeometricParameters params = HypergeometricParameters::kCorrected);

/// Samples a hypergeometric candidate (value and analytic derivative) on a grid.
RadialSolution sample_hypergeometric(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                                     std::span<const double> grid, FrameBranch branch,
                                     HypergeometricParameters params = HypergeometricParameters::kCorrected);

/// sup over probes of |u'' + A u' + (B + lambda^2 + rho^2) u| / max(|u|, floor),
/// with u'' from the five-point (Richardson-extrapolated) central difference of
/// the sampled u and u' taken from the stored derivative. Each probe must be a
/// grid point with two grid neighbours on each side.
double residual(const RadialSolution& solution, std::span<const double> probes, double floor = 1e-300);

/// Same residual for a callable u, with both derivatives from Richardson-
/// extrapolated central differences of step h.
double function_residual(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                         const std::function<Complex(double)>& u, double t, double h, double floor = 1e-300);

/// Largest candidate residual over both branches, probes t in {0.75, 1.5, 3}
/// and the supplied modes.
double hypergeometric_parameter_residual(const RankOneSpace& space, SpectralParam lambda,
                                         std::span<const ModeIndex> modes, HypergeometricParameters params);

/// First parameter set (in kCorrected, kPrinted, kTabulated order) whose
/// residual stays under kResidualLimit for every mode with p > 0 available on
/// `space`. Throws NumericalFailure if none passes.
HypergeometricParameters select_hypergeometric_parameters(const RankOneSpace& space, SpectralParam lambda);

struct ConnectionProbes {
    double t_a;
    double t_b;
    double t_c; // cross-validation point
};

/// Probe triple with t_b - t_a about a quarter period of the oscillation.
ConnectionProbes default_connection_probes(SpectralParam lambda, double t_a = 1.0);

struct ConnectionCoefficients {
    Complex c1;
    Complex c2;
    double conditioning;          // 2-norm condition number, columns equilibrated
    double cross_validation_defect; // relative defect at t_c
};

inline constexpr double kMaxConditioning = 1e8;
inline constexpr double kMaxCrossValidationDefect = 1e-6;

/// Solves u = c1 u_plus + c2 u_minus at t_a, t_b and checks it at t_c. All three
/// probes must be grid points of u and of both frames. Throws NumericalFailure
/// when conditioning > 1e8 or the cross-validation defect exceeds 1e-6.
ConnectionCoefficients connection_coefficients(const RadialSolution& u, const FramePair& frames,
                                               const ConnectionProbes& probes);

} // namespace rankone
