#include "rankone/space.hpp"

#include "rankone/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <charconv>
#include <cmath>

namespace rankone {

RankOneSpace RankOneSpace::from_multiplicities(int m_gamma, int m_2gamma)
{
    if (m_gamma < 1) {
        throw InvalidArgument("m_gamma must be >= 1, got " + std::to_string(m_gamma));
    }
    if (m_2gamma < 0) {
        throw InvalidArgument("m_2gamma must be >= 0, got " + std::to_string(m_2gamma));
    }
    return RankOneSpace(m_gamma, m_2gamma);
}

RankOneSpace RankOneSpace::real_hyperbolic(int n)
{
    if (n < 2) {
        throw InvalidArgument("real hyperbolic space needs n >= 2");
    }
    return RankOneSpace(n - 1, 0);
}

RankOneSpace RankOneSpace::complex_hyperbolic(int m)
{
    if (m < 2) {
        throw InvalidArgument("complex hyperbolic space needs m >= 2");
    }
    return RankOneSpace(2 * m - 2, 1);
}

RankOneSpace RankOneSpace::quaternionic_hyperbolic(int m)
{
    if (m < 2) {
        throw InvalidArgument("quaternionic hyperbolic space needs m >= 2");
    }
    return RankOneSpace(4 * m - 4, 3);
}

RankOneSpace RankOneSpace::octonionic_plane()
{
    return RankOneSpace(8, 7);
}

RankOneSpace RankOneSpace::from_family(std::string_view family)
{
    auto colon = family.find(':');
    auto name = family.substr(0, colon);
    if (name == "octonionic") {
        if (colon != std::string_view::npos) {
            throw InvalidArgument("octonionic family takes no dimension");
        }
        return octonionic_plane();
    }
    if (colon == std::string_view::npos) {
        throw InvalidArgument("family '" + std::string(family) + "' needs a dimension, e.g. real:3");
    }
    auto arg = family.substr(colon + 1);
    int dim = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), dim);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) {
        throw InvalidArgument("bad dimension in family '" + std::string(family) + "'");
    }
    if (name == "real") {
        return real_hyperbolic(dim);
    }
    if (name == "complex") {
        return complex_hyperbolic(dim);
    }
    if (name == "quaternionic") {
        return quaternionic_hyperbolic(dim);
    }
    throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

std::string RankOneSpace::descriptor() const
{
    return "(" + std::to_string(m_gamma_) + "," + std::to_string(m_2gamma_) + ")";
}

double jacobian(const RankOneSpace& space, double t)
{
    if (t < 0) {
        throw InvalidArgument("jacobian needs t >= 0");
    }
    return std::pow(2.0 * std::sinh(t), space.m_gamma() + space.m_2gamma()) * std::pow(std::cosh(t), space.m_2gamma());
}

double log_jacobian(const RankOneSpace& space, double t)
{
    if (t <= 0) {
        throw InvalidArgument("log_jacobian needs t > 0");
    }
    // log(2 sinh t) = t + log(1 - e^{-2t}),  log cosh t = t - log 2 + log(1 + e^{-2t})
    double x = std::exp(-2.0 * t);
    double log_2sinh = t + std::log1p(-x);
    if (t < 0.5) {
        log_2sinh = std::log(2.0 * std::sinh(t));
    }
    double log_cosh = t - std::log(2.0) + std::log1p(x);
    return (space.m_gamma() + space.m_2gamma()) * log_2sinh + space.m_2gamma() * log_cosh;
}

double ball_volume(const RankOneSpace& space, double r, double rel_tol)
{
    if (r < 0) {
        throw InvalidArgument("ball_volume needs r >= 0");
    }
    if (r == 0) {
        return 0.0;
    }
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double t) { return jacobian(space, t); };
    double error = 0;
    double value = gauss_kronrod<double, 21>::integrate(f, 0.0, r, 30, rel_tol, &error);
    if (!(error <= 10 * rel_tol * value)) {
        throw NumericalFailure("ball_volume quadrature did not reach tolerance");
    }
    return value;
}

} // namespace rankone
