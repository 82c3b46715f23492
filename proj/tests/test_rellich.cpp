#include "spectrum_oracle.hpp"
#include "support.hpp"

#include "rankone/errors.hpp"
#include "rankone/rellich.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace rankone;
using testing::arange;

namespace {

std::vector<double> radii(double lo, double hi)
{
    return arange(lo, hi, 1.0);
}

} // namespace

TEST_CASE("gamma_p")
{
    CHECK(gamma_p(1.0) == 1.0);
    CHECK(gamma_p(2.0) == 0.0);
    CHECK(gamma_p(4.0) == -0.5);
    CHECK(gamma_p(4.0) == doctest::Approx(-gamma_p(4.0 / 3.0)).epsilon(1e-15));
    CHECK(gamma_p(INFINITY) == -1.0);
    CHECK_THROWS_AS(gamma_p(0.5), InvalidArgument);
}

TEST_CASE("oscillation envelope")
{
    auto a = oscillation_envelope(1.0, 1.0, 1.0);
    CHECK(a.min_sq == 0.0);
    CHECK(a.max_sq == 4.0);
    CHECK(a.period == doctest::Approx(std::numbers::pi));
    auto b = oscillation_envelope(1.0, 0.0, 2.0);
    CHECK(b.min_sq == 1.0);
    CHECK(b.max_sq == 1.0);
    CHECK(b.period == doctest::Approx(std::numbers::pi / 2));
    auto c = oscillation_envelope(2.0, 1.0, 1.0);
    CHECK(c.min_sq == 1.0);
    CHECK(c.max_sq == 9.0);
    CHECK(c.period == doctest::Approx(std::numbers::pi));
    CHECK_THROWS_AS(oscillation_envelope(1.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("annulus mass of Phi with lambda = i/2, p = 1")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.0, 0.5));
    auto report = classify(f, 1.0, radii(4, 10));
    CHECK(report.predicted_rate == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(report.fitted_rate - 0.5) <= 0.05);
    CHECK(report.measured_class == GrowthClass::kExponentialGrowth);
}

TEST_CASE("annulus mass of phi with real lambda, p = 2, grows linearly")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::spherical(h3, SpectralParam(1.0));
    for (double R : {8.0, 10.0, 12.0, 16.0}) {
        double ratio = std::exp(annulus_mass(f, 2.0, 2 * R).log() - annulus_mass(f, 2.0, R).log());
        CHECK(std::abs(ratio - 2.0) <= 0.2);
    }
}

TEST_CASE("annulus mass decays when Im lambda exceeds gamma_p rho")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.5, 2.0));
    auto R = radii(4, 12);
    auto report = classify(f, 1.0, R);
    for (std::size_t i = 1; i < R.size(); ++i) {
        CHECK(report.masses[i].log() < report.masses[i - 1].log());
    }
    CHECK(std::abs(report.fitted_rate + 1.0) <= 0.05);
    CHECK(report.measured_class == GrowthClass::kExponentialDecay);
}

TEST_CASE("annulus masses are stable under the quadrature tolerance")
{
    auto s = RankOneSpace::from_multiplicities(4, 3);
    for (auto f : {ModelEigenfunction::spherical(s, SpectralParam(1.0, 0.25)),
                   ModelEigenfunction::big_phi_minus(s, SpectralParam(0.5, 1.0)),
                   ModelEigenfunction::mode(s, SpectralParam(1.0, 0.5), ModeIndex{1, 2})}) {
        for (double R : {4.0, 9.0, 20.0}) {
            double a = annulus_mass(f, 1.5, R, 1e-8).log();
            double b = annulus_mass(f, 1.5, R, 1e-10).log();
            CHECK(std::abs(a - b) <= 1e-7);
        }
    }
}

TEST_CASE("annulus mass survives huge magnitudes")
{
    auto o = RankOneSpace::octonionic_plane();
    auto f = ModelEigenfunction::big_phi_plus(o, SpectralParam(1.0, -3.0));
    LogMass m = annulus_mass(f, 1.0, 60.0);
    CHECK(std::isfinite(m.log()));
    CHECK(m.log() > 700.0); // beyond double range if formed directly
    CHECK(m.mantissa > 0.0);
}

TEST_CASE("annulus mass argument checks")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::big_phi_plus(h3, SpectralParam(1.0));
    CHECK_THROWS_AS(annulus_mass(f, 1.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(annulus_mass(f, 0.9, 4.0), InvalidArgument);
    CHECK_THROWS_AS(annulus_mass(f, INFINITY, 4.0), InvalidArgument);
    CHECK_THROWS_AS(ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.0, 2.0)), ExcludedParameter);
}

TEST_CASE("classification examples")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto R = radii(4, 12);

    auto growth = classify(ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.5, 0.3)), 1.0, R);
    CHECK(growth.predicted_class == GrowthClass::kExponentialGrowth);
    CHECK(growth.predicted_rate == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(growth.measured_class == GrowthClass::kExponentialGrowth);
    CHECK(std::abs(growth.fitted_rate - 0.7) <= 0.05);

    auto linear = classify(ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.5, 1.0)), 1.0, R);
    CHECK(linear.predicted_class == GrowthClass::kLinear);
    CHECK(linear.measured_class == GrowthClass::kLinear);
    REQUIRE_FALSE(linear.linear_ratios.empty());
    for (double ratio : linear.linear_ratios) {
        CHECK(ratio >= 1.5);
        CHECK(ratio <= 2.5);
    }

    auto l2 = classify(ModelEigenfunction::spherical(h3, SpectralParam(1.0)), 2.0, R);
    CHECK(l2.predicted_class == GrowthClass::kLinear);
    CHECK(l2.measured_class == GrowthClass::kLinear);
    CHECK(l2.envelope.has_value());
}

TEST_CASE("oscillating masses are reported as indeterminate")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto report = classify(ModelEigenfunction::spherical(h3, SpectralParam(0.5)), 1.0, radii(4, 12));
    CHECK(report.measured_class == GrowthClass::kIndeterminate);
    REQUIRE(report.envelope.has_value());
    CHECK(report.envelope->period == doctest::Approx(2 * std::numbers::pi));
    CHECK(report.envelope->max_sq > report.envelope->min_sq);
}

TEST_CASE("classify argument checks")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::big_phi_plus(h3, SpectralParam(1.0));
    CHECK_THROWS_AS(classify(f, 1.0, radii(4, 8)), InvalidArgument);
    CHECK_THROWS_AS(classify(f, 1.0, radii(3, 10)), InvalidArgument);
    std::vector<double> unsorted = {4, 6, 5, 7, 8, 9};
    CHECK_THROWS_AS(classify(f, 1.0, unsorted), InvalidArgument);
}

TEST_CASE("measured class matches the predicted class on every preset")
{
    auto R = radii(4, 12);
    for (const auto& s : testing::preset_spaces()) {
        for (double p : {1.0, 1.5, 2.0}) {
            double g = gamma_p(p) * s.rho();
            for (double im : {0.0, 0.25, -0.25, g, -g, g + 1, -(g + 1)}) {
                SpectralParam lambda(1.0, im);
                for (auto f : {ModelEigenfunction::big_phi_plus(s, lambda), ModelEigenfunction::big_phi_minus(s, lambda),
                               ModelEigenfunction::spherical(s, lambda)}) {
                    auto r = classify(f, p, R);
                    CAPTURE(s.descriptor());
                    CAPTURE(p);
                    CAPTURE(im);
                    CAPTURE(to_string(f.kind()));
                    CHECK(r.measured_class == r.predicted_class);
                    if (r.predicted_class == GrowthClass::kExponentialGrowth ||
                        r.predicted_class == GrowthClass::kExponentialDecay) {
                        CHECK(std::abs(r.fitted_rate - r.predicted_rate) <= 0.05);
                    }
                }
            }
        }
    }
}

TEST_CASE("single modes follow the rate of their frame")
{
    auto s = RankOneSpace::from_multiplicities(2, 1);
    SpectralParam lambda(1.0, 0.5);
    auto R = radii(4, 12);
    auto plus = classify(ModelEigenfunction::mode(s, lambda, ModeIndex{1, 2}, FrameBranch::kPlus), 1.0, R);
    CHECK(plus.predicted_rate == doctest::Approx(1.5));
    CHECK(plus.measured_class == GrowthClass::kExponentialGrowth);
    CHECK(std::abs(plus.fitted_rate - 1.5) <= 0.05);
    auto minus = classify(ModelEigenfunction::mode(s, lambda, ModeIndex{1, 2}, FrameBranch::kMinus), 1.0, R);
    CHECK(minus.predicted_rate == doctest::Approx(2.5));
    CHECK(std::abs(minus.fitted_rate - 2.5) <= 0.05);
}

TEST_CASE("model eigenfunction profiles")
{
    auto s = RankOneSpace::from_multiplicities(2, 1);
    SpectralParam lambda(0.8, -0.3);
    auto phi = ModelEigenfunction::spherical(s, lambda);
    CHECK(phi.kind() == ModelKind::kPhi);
    CHECK_FALSE(phi.mode_index().has_value());
    CHECK(phi.log_abs(3.0) == doctest::Approx(std::log(std::abs(spherical_phi_series(s, lambda, 3.0)))).epsilon(1e-12));
    auto big = ModelEigenfunction::big_phi_minus(s, lambda);
    CHECK(big.log_abs(3.0) == doctest::Approx(std::log(std::abs(phi_big(s, lambda.negated(), 3.0)))).epsilon(1e-12));
    auto mode = ModelEigenfunction::mode(s, lambda, ModeIndex{1, 1}, FrameBranch::kMinus);
    CHECK((mode.mode_index() == ModeIndex{1, 1}));
    CHECK(mode.branch() == FrameBranch::kMinus);
    const double grid[] = {3.0};
    auto frames = frame_solutions(s, lambda, ModeIndex{1, 1}, grid);
    CHECK(mode.log_abs(3.0) == doctest::Approx(std::log(std::abs(frames.minus.u.front()))).epsilon(1e-9));
}

TEST_CASE("spectrum membership examples")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    CHECK(lp_spectrum_contains(h3, 2.0, 2.0));
    CHECK_FALSE(lp_spectrum_contains(h3, 2.0, 0.0));
    CHECK(lp_spectrum_contains(h3, 1.0, 0.0));
    CHECK(lp_spectrum_contains(h3, INFINITY, 0.0));
    CHECK_FALSE(lp_spectrum_contains(h3, 1.0, -0.01));
    CHECK_THROWS_AS(lp_spectrum_contains(h3, 0.5, 1.0), InvalidArgument);
}

TEST_CASE("p = 2 spectrum is the half line [rho^2, inf)")
{
    for (const auto& s : testing::preset_spaces()) {
        double r2 = s.rho() * s.rho();
        for (double x = -2.0; x <= r2 + 20.0; x += 0.125) {
            CHECK(lp_spectrum_contains(s, 2.0, Complex(x, 0.0)) == (x >= r2));
            CHECK_FALSE(lp_spectrum_contains(s, 2.0, Complex(x, 0.01)));
        }
    }
}

TEST_CASE("spectrum regions of p and its dual exponent coincide")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-6.0, 12.0);
    std::uniform_real_distribution<double> im(-8.0, 8.0);
    auto s = RankOneSpace::from_multiplicities(2, 1);
    for (int i = 0; i < 2000; ++i) {
        Complex w(re(rng), im(rng));
        CHECK(lp_spectrum_contains(s, 4.0, w) == lp_spectrum_contains(s, 4.0 / 3.0, w));
    }
}

TEST_CASE("spectrum membership agrees with a brute-force search")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> re(-5.0, 10.0);
    std::uniform_real_distribution<double> im(-6.0, 6.0);
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    for (double p : {1.0, 1.5, 3.0}) {
        double width = std::abs(gamma_p(p)) * h3.rho();
        for (int i = 0; i < 500; ++i) {
            Complex w(re(rng), im(rng));
            bool oracle = testing::strip_residual(h3.rho(), width, w) <= 1e-9;
            if (oracle != lp_spectrum_contains(h3, p, w)) {
                CHECK(testing::boundary_distance(h3.rho(), width, w) <= 1e-6);
            }
        }
    }
}

TEST_CASE("psi")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    CHECK(psi(h3, SpectralParam(1.0), 3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
    CHECK(psi(h3, SpectralParam(1.0, 0.7), 0.0) == 1.0);
    CHECK_THROWS_AS(psi(h3, SpectralParam(1.0), -1.0), InvalidArgument);

    auto ref = ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.0, 0.5));
    double lo = INFINITY;
    double hi = 0.0;
    for (double t : arange(5.0, 25.0, 0.5)) {
        double r = std::log(psi(h3, SpectralParam(0.3, 0.5), t)) - ref.log_abs(t);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi - lo <= 0.01); // bounded ratio, in fact nearly constant

    auto s = RankOneSpace::from_multiplicities(4, 3);
    for (double t = 0.5; t <= 10.0; t += 0.5) {
        CHECK(psi(s, SpectralParam(1.0, 0.3), t) < psi(s, SpectralParam(1.0, 0.3), t - 0.5));
        CHECK(psi(s, SpectralParam(1.0, -0.6), t) < psi(s, SpectralParam(1.0, 0.3), t));
    }
}

TEST_CASE("Hardy functional dichotomy for Phi")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.0, 0.5));
    auto grid = arange(1.0, 40.0, 0.25);

    auto bounded = hardy_functional(f, INFINITY, 0.0, grid);
    CHECK_FALSE(bounded.divergence_flag);
    CHECK(std::abs(bounded.running_sup_ratio - 1.0) <= 0.01);
    CHECK(bounded.running_sup.size() == grid.size());

    auto growing = hardy_functional(f, INFINITY, 0.1, grid);
    CHECK(growing.divergence_flag);
    CHECK(std::abs(growing.running_sup_ratio / std::pow(2.0, 0.1) - 1.0) <= 0.1);
    CHECK(growing.threshold == doctest::Approx(std::pow(2.0, 0.05)));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(growing.running_sup[i] >= growing.running_sup[i - 1]);
    }
}

TEST_CASE("Hardy functional flags phi with real lambda")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::spherical(h3, SpectralParam(1.0));
    auto r = hardy_functional(f, 2.0, 0.1, arange(1.0, 40.0, 0.25));
    CHECK(r.divergence_flag);
}

TEST_CASE("Hardy functional argument checks")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto f = ModelEigenfunction::big_phi_plus(h3, SpectralParam(0.0, 0.5));
    std::vector<double> empty;
    CHECK_THROWS_AS(hardy_functional(f, 2.0, 0.0, empty), InvalidArgument);
    std::vector<double> bad = {2.0, 1.0};
    CHECK_THROWS_AS(hardy_functional(f, 2.0, 0.0, bad), InvalidArgument);
    CHECK_THROWS_AS(hardy_functional(f, 0.5, 0.0, arange(1, 5, 1)), InvalidArgument);
}
