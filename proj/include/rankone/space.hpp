#pragma once

#include <string>
#include <string_view>

namespace rankone {

/// Rank-one symmetric space of noncompact type, described by its two root
/// multiplicities. Everything geometric (rho, dimension, Jacobian) derives from
/// the pair (m_gamma, m_2gamma).
class RankOneSpace {
  public:
    /// Throws InvalidArgument unless m_gamma >= 1 and m_2gamma >= 0.
    static RankOneSpace from_multiplicities(int m_gamma, int m_2gamma);

    // Standard multiplicity presets.
    static RankOneSpace real_hyperbolic(int n);         // H^n, n >= 2: (n-1, 0)
    static RankOneSpace complex_hyperbolic(int m);      // m >= 2: (2m-2, 1)
    static RankOneSpace quaternionic_hyperbolic(int m); // m >= 2: (4m-4, 3)
    static RankOneSpace octonionic_plane();             // (8, 7)

    /// Parses "real:3", "complex:2", "quaternionic:2" or "octonionic".
    static RankOneSpace from_family(std::string_view family);

    int m_gamma() const { return m_gamma_; }
    int m_2gamma() const { return m_2gamma_; }
    /// 2*rho = m_gamma + 2*m_2gamma, exact.
    int two_rho() const { return m_gamma_ + 2 * m_2gamma_; }
    double rho() const { return 0.5 * two_rho(); }
    int dimension() const { return m_gamma_ + m_2gamma_ + 1; }

    /// "(m_gamma,m_2gamma)", used in manifests and messages.
    std::string descriptor() const;

    friend bool operator==(const RankOneSpace&, const RankOneSpace&) = default;

  private:
    RankOneSpace(int m_gamma, int m_2gamma)
        : m_gamma_(m_gamma)
        , m_2gamma_(m_2gamma)
    {
    }

    int m_gamma_;
    int m_2gamma_;
};

/// Polar-coordinate Jacobian J(t) = (2 sinh t)^{m_gamma+m_2gamma} (cosh t)^{m_2gamma}.
/// The overall normalization constant is fixed to 1.
double jacobian(const RankOneSpace& space, double t);

/// log J(t) for t > 0, stable for large t.
double log_jacobian(const RankOneSpace& space, double t);

/// Volume of the geodesic ball of radius r, i.e. the integral of J over [0, r].
double ball_volume(const RankOneSpace& space, double r, double rel_tol = 1e-10);

} // namespace rankone
