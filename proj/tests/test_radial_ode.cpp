#include "support.hpp"

#include "rankone/errors.hpp"
#include "rankone/harish_chandra.hpp"
#include "rankone/radial_ode.hpp"

#include <doctest.h>

using namespace rankone;
using testing::arange;
using testing::rel_diff;

TEST_CASE("radial coefficients")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto c = radial_operator_coefficients(h3, ModeIndex{}, 1.0);
    CHECK(c.first_order == doctest::Approx(2.0 / std::tanh(1.0)).epsilon(1e-15));
    CHECK(c.first_order == doctest::Approx(2.626).epsilon(1e-3));
    CHECK(c.potential == 0.0);

    auto s = RankOneSpace::from_multiplicities(2, 1);
    auto d = radial_operator_coefficients(s, ModeIndex{0, 1}, 1.0);
    CHECK(d.potential == doctest::Approx(-3.0 / std::pow(std::sinh(1.0), 2)).epsilon(1e-15));
    CHECK(d.potential == doctest::Approx(-2.171).epsilon(1e-3));

    auto e = radial_operator_coefficients(s, ModeIndex{1, 2}, 0.8);
    CHECK(e.potential ==
          doctest::Approx(1.0 / std::pow(std::cosh(0.8), 2) - 8.0 / std::pow(std::sinh(0.8), 2)).epsilon(1e-14));
    CHECK(e.first_order == doctest::Approx(2.0 / std::tanh(0.8) + 2.0 / std::tanh(1.6)).epsilon(1e-14));

    for (const auto& sp : testing::preset_spaces()) {
        CHECK(std::abs(radial_operator_coefficients(sp, ModeIndex{}, 20.0).first_order - 2 * sp.rho()) <= 1e-8);
    }
    CHECK_THROWS_AS(radial_operator_coefficients(h3, ModeIndex{}, 0.0), InvalidArgument);
}

TEST_CASE("mode index invariants")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto s = RankOneSpace::from_multiplicities(2, 1);
    CHECK_NOTHROW((ModeIndex{0, 3}.validate(h3)));
    CHECK_THROWS_AS((ModeIndex{1, 1}.validate(h3)), InvalidArgument);
    CHECK_NOTHROW((ModeIndex{1, 1}.validate(s)));
    CHECK_THROWS_AS((ModeIndex{2, 1}.validate(s)), InvalidArgument);
    CHECK_THROWS_AS((ModeIndex{-1, 0}.validate(s)), InvalidArgument);
    CHECK_THROWS_AS((solve_forward(h3, SpectralParam(1.0), ModeIndex{1, 1}, arange(1, 2, 1))), InvalidArgument);
}

TEST_CASE("forward solution on H^3 is sin(t)/sinh(t)")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    const double grid[] = {1.0, 2.0, 5.0};
    auto u = solve_forward(h3, SpectralParam(1.0), ModeIndex{}, grid);
    CHECK(u.method == SolutionMethod::kForwardOde);
    CHECK(u.valid());
    for (std::size_t i = 0; i < 3; ++i) {
        double t = grid[i];
        CHECK(std::abs(u.u[i] - std::sin(t) / std::sinh(t)) <= 1e-9);
        double dexact = std::cos(t) / std::sinh(t) - std::sin(t) * std::cosh(t) / std::pow(std::sinh(t), 2);
        CHECK(std::abs(u.du[i] - dexact) <= 1e-9);
    }
}

TEST_CASE("forward solution is insensitive to the starting radius")
{
    const double grid[] = {1.0};
    for (const auto& s : testing::preset_spaces()) {
        SpectralParam lambda(0.7, 0.3);
        Complex ref = solve_forward(s, lambda, ModeIndex{}, grid, {1e-3, 1e-12}).u.front();
        for (double t0 : {1e-2, 1e-4}) {
            Complex v = solve_forward(s, lambda, ModeIndex{}, grid, {t0, 1e-12}).u.front();
            CHECK(rel_diff(v, ref) <= 1e-9);
        }
    }
}

TEST_CASE("forward solution depends on lambda only through lambda^2")
{
    const double grid[] = {5.0};
    for (const auto& s : testing::preset_spaces()) {
        Complex a = solve_forward(s, SpectralParam(1.2, 0.4), ModeIndex{}, grid).u.front();
        Complex b = solve_forward(s, SpectralParam(-1.2, -0.4), ModeIndex{}, grid).u.front();
        CHECK(rel_diff(a, b) <= 1e-10);
    }
}

TEST_CASE("forward solution of a general mode starts like t^q")
{
    auto s = RankOneSpace::from_multiplicities(2, 1);
    ModeIndex mode{1, 2};
    auto grid = arange(0.01, 3.0, 0.01);
    auto u = solve_forward(s, SpectralParam(1.0, 0.5), mode, grid);
    CHECK(u.valid());
    CHECK(std::abs(u.u.front() / std::pow(0.01, 2) - 1.0) <= 1e-3);
}

TEST_CASE("frames: the trivial mode reproduces Phi")
{
    auto grid = arange(2.0, 10.0, 0.25);
    for (const auto& s : testing::preset_spaces()) {
        for (Complex l : {Complex(1, 0), Complex(0.5, 0.25), Complex(0.5, -0.25)}) {
            SpectralParam lambda(l);
            auto frames = frame_solutions(s, lambda, ModeIndex{}, grid);
            HarishChandraSeries plus(s, lambda, 1e-12);
            HarishChandraSeries minus(s, lambda.negated(), 1e-12);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                CHECK(rel_diff(frames.plus.u[i], plus.value(grid[i])) <= 1e-7);
                CHECK(rel_diff(frames.minus.u[i], minus.value(grid[i])) <= 1e-7);
            }
        }
    }
}

TEST_CASE("frames are normalized at infinity")
{
    auto grid = arange(15.0, 25.0, 0.5);
    auto s = RankOneSpace::from_multiplicities(2, 1);
    for (ModeIndex mode : {ModeIndex{0, 0}, ModeIndex{1, 2}}) {
        for (Complex l : {Complex(1, 0), Complex(0.5, 0.7)}) {
            SpectralParam lambda(l);
            auto frames = frame_solutions(s, lambda, mode, grid);
            Complex mu_plus = Complex(0, 1) * l - s.rho();
            Complex mu_minus = -Complex(0, 1) * l - s.rho();
            double prev_plus = INFINITY;
            double prev_minus = INFINITY;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double dp = std::abs(std::exp(-mu_plus * grid[i]) * frames.plus.u[i] - 1.0);
                double dm = std::abs(std::exp(-mu_minus * grid[i]) * frames.minus.u[i] - 1.0);
                if (grid[i] == 20.0) {
                    CHECK(dp <= 1e-6);
                    CHECK(dm <= 1e-6);
                }
                // monotone decay down to the roundoff floor
                CHECK((dp <= prev_plus || dp <= 1e-11));
                CHECK((dm <= prev_minus || dm <= 1e-11));
                prev_plus = dp;
                prev_minus = dm;
            }
        }
    }
}

TEST_CASE("negating lambda swaps the frames")
{
    auto grid = arange(1.0, 6.0, 0.5);
    auto s = RankOneSpace::from_multiplicities(4, 3);
    for (ModeIndex mode : {ModeIndex{0, 0}, ModeIndex{2, 3}}) {
        SpectralParam lambda(0.8, 0.3);
        auto a = frame_solutions(s, lambda, mode, grid);
        auto b = frame_solutions(s, lambda.negated(), mode, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(rel_diff(a.plus.u[i], b.minus.u[i]) <= 1e-10);
            CHECK(rel_diff(a.minus.u[i], b.plus.u[i]) <= 1e-10);
        }
    }
}

TEST_CASE("frame errors")
{
    auto s = RankOneSpace::from_multiplicities(2, 1);
    auto grid = arange(1.0, 2.0, 0.5);
    CHECK_THROWS_AS(frame_solutions(s, SpectralParam(0.0, 1.0), ModeIndex{}, grid), ExcludedParameter);
    CHECK_THROWS_AS(frame_solutions(s, SpectralParam(1e-7), ModeIndex{}, grid), NumericalFailure);
    CHECK_THROWS_AS(frame_solutions(s, SpectralParam(1.0), ModeIndex{}, arange(0.25, 1.0, 0.25)), InvalidArgument);
    CHECK_THROWS_AS((frame_solutions(s, SpectralParam(1.0), ModeIndex{}, grid, {20.0, 0.5, 1e-12})), InvalidArgument);
}

TEST_CASE("mode series of the trivial mode carries the Harish-Chandra coefficients")
{
    for (const auto& s : testing::preset_spaces()) {
        Complex l(0.9, -0.4);
        ModeSeries series(s, l, ModeIndex{});
        auto coeffs = series.coefficients();
        auto hc = gamma_coefficients(s, SpectralParam(l), int(coeffs.size()) - 1);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            CHECK(std::abs(coeffs[k] - hc.values[k]) <= 1e-12 * std::max(1.0, std::abs(hc.values[k])));
        }
    }
}

TEST_CASE("hypergeometric candidates tend to their leading exponential")
{
    for (const auto& s : testing::preset_spaces()) {
        SpectralParam lambda(1.0, 0.5);
        std::vector<ModeIndex> modes = {ModeIndex{0, 0}, ModeIndex{0, 2}};
        if (s.m_2gamma() > 0) {
            modes.push_back(ModeIndex{1, 2});
        }
        for (ModeIndex mode : modes) {
            for (FrameBranch br : {FrameBranch::kPlus, FrameBranch::kMinus}) {
                Complex sign = br == FrameBranch::kPlus ? 1.0 : -1.0;
                Complex mu = sign * Complex(0, 1) * lambda.value() - s.rho();
                Complex ratio = hypergeometric_candidate(s, lambda, mode, 20.0, br) / std::exp(mu * 20.0);
                CHECK(std::abs(ratio - 1.0) <= 1e-5);
            }
        }
    }
}

TEST_CASE("hypergeometric candidate matches the frame on H^3")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    SpectralParam lambda(1.0, 0.5);
    const double grid[] = {3.0};
    auto frames = frame_solutions(h3, lambda, ModeIndex{}, grid);
    Complex cand = hypergeometric_candidate(h3, lambda, ModeIndex{}, 3.0, FrameBranch::kPlus);
    CHECK(rel_diff(cand, frames.plus.u.front()) <= 1e-7);
}

TEST_CASE("hypergeometric candidates agree with the frames for nontrivial modes")
{
    auto grid = arange(1.0, 5.0, 0.5);
    auto s = RankOneSpace::from_multiplicities(4, 3);
    SpectralParam lambda(1.4, -0.3);
    for (ModeIndex mode : {ModeIndex{1, 1}, ModeIndex{2, 3}}) {
        auto frames = frame_solutions(s, lambda, mode, grid);
        auto plus = sample_hypergeometric(s, lambda, mode, grid, FrameBranch::kPlus);
        auto minus = sample_hypergeometric(s, lambda, mode, grid, FrameBranch::kMinus);
        CHECK(plus.method == SolutionMethod::kHypergeometric);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(rel_diff(plus.u[i], frames.plus.u[i]) <= 1e-7);
            CHECK(rel_diff(minus.u[i], frames.minus.u[i]) <= 1e-7);
            CHECK(rel_diff(plus.du[i], frames.plus.du[i]) <= 1e-7);
        }
    }
}

TEST_CASE("finite-difference residual of the corrected candidates")
{
    auto s = RankOneSpace::from_multiplicities(2, 1);
    SpectralParam lambda(1.0, 0.5);
    for (ModeIndex mode : {ModeIndex{0, 0}, ModeIndex{1, 1}, ModeIndex{1, 2}}) {
        for (FrameBranch br : {FrameBranch::kPlus, FrameBranch::kMinus}) {
            auto u = [&](double t) { return hypergeometric_candidate(s, lambda, mode, t, br); };
            for (double h : {1e-3, 5e-4}) {
                for (double t : {0.75, 1.5, 3.0}) {
                    CHECK(function_residual(s, lambda, mode, u, t, h) <= 1e-5);
                }
            }
        }
    }
}

TEST_CASE("printed and tabulated hypergeometric parameters fail for p > 0")
{
    for (auto s : {RankOneSpace::from_multiplicities(2, 1), RankOneSpace::from_multiplicities(4, 3),
                   RankOneSpace::octonionic_plane()}) {
        SpectralParam lambda(1.0, 0.5);
        std::vector<ModeIndex> modes = {ModeIndex{1, 1}, ModeIndex{1, 2}, ModeIndex{2, 2}};
        CHECK(hypergeometric_parameter_residual(s, lambda, modes, HypergeometricParameters::kCorrected) <= 1e-5);
        CHECK(hypergeometric_parameter_residual(s, lambda, modes, HypergeometricParameters::kPrinted) > 1e-5);
        CHECK(hypergeometric_parameter_residual(s, lambda, modes, HypergeometricParameters::kTabulated) > 1e-5);
        CHECK(select_hypergeometric_parameters(s, lambda) == HypergeometricParameters::kCorrected);
    }
}

TEST_CASE("residual of sampled solutions")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    auto grid = arange(0.8, 5.2, 0.005);
    auto u = solve_forward(h3, SpectralParam(1.0), ModeIndex{}, grid);
    const double probes[] = {1.0, 2.0, 5.0};
    CHECK(residual(u, probes) <= 1e-6);

    RadialSolution zero = u;
    std::fill(zero.u.begin(), zero.u.end(), Complex(0.0));
    std::fill(zero.du.begin(), zero.du.end(), Complex(0.0));
    CHECK(residual(zero, probes, 1e-30) == 0.0);

    RadialSolution corrupted = u;
    corrupted.u[corrupted.index_of(2.0)] += 1e-3;
    corrupted.residual_sup = residual(corrupted, probes);
    CHECK(corrupted.residual_sup > 1e-2);
    CHECK_FALSE(corrupted.valid());

    const double outside[] = {0.805};
    CHECK_THROWS_AS(residual(u, outside), InvalidArgument);
}

TEST_CASE("every shipped solution passes the residual limit")
{
    auto grid = arange(1.0, 10.0, 0.25);
    for (const auto& s : testing::preset_spaces()) {
        std::vector<ModeIndex> modes = {ModeIndex{0, 0}, ModeIndex{0, 1}};
        if (s.m_2gamma() > 0) {
            modes.push_back(ModeIndex{1, 2});
        }
        for (ModeIndex mode : modes) {
            for (Complex l : {Complex(1, 0), Complex(0.5, 0.25), Complex(0.5, -0.25), Complex(0, 1.35)}) {
                SpectralParam lambda(l);
                auto fw = solve_forward(s, lambda, mode, grid);
                auto frames = frame_solutions(s, lambda, mode, grid);
                CHECK(fw.valid());
                CHECK(frames.plus.valid());
                CHECK(frames.minus.valid());
                CHECK(sample_hypergeometric(s, lambda, mode, grid, FrameBranch::kPlus).valid());
            }
        }
    }
}

TEST_CASE("Abel identity: J W is constant")
{
    auto grid = arange(2.0, 15.0, 0.25);
    for (const auto& s : testing::preset_spaces()) {
        for (ModeIndex mode : {ModeIndex{0, 0}, ModeIndex{0, 2}}) {
            SpectralParam lambda(1.0, 0.5);
            auto frames = frame_solutions(s, lambda, mode, grid);
            std::vector<Complex> jw;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                Complex w = frames.plus.u[i] * frames.minus.du[i] - frames.minus.u[i] * frames.plus.du[i];
                jw.push_back(std::exp(log_jacobian(s, grid[i])) * w);
            }
            double worst = 0.0;
            for (Complex v : jw) {
                worst = std::max(worst, rel_diff(v, jw.front()));
            }
            CHECK(worst <= 1e-8);
            // the limit value is -2 i lambda 2^{-m_2gamma}
            Complex limit = -2.0 * Complex(0, 1) * lambda.value() * std::pow(2.0, -s.m_2gamma());
            CHECK(rel_diff(jw.back(), limit) <= 1e-8);
        }
    }
}

TEST_CASE("connection coefficients of phi for real lambda are conjugate")
{
    auto h3 = RankOneSpace::from_multiplicities(2, 0);
    SpectralParam lambda(1.0);
    auto probes = default_connection_probes(lambda);
    std::vector<double> grid = {probes.t_a, probes.t_c, probes.t_b};
    auto u = solve_forward(h3, lambda, ModeIndex{}, grid);
    auto frames = frame_solutions(h3, lambda, ModeIndex{}, grid);
    auto cc = connection_coefficients(u, frames, probes);
    CHECK(std::abs(cc.c1 - std::conj(cc.c2)) <= 1e-8);
    CHECK(rel_diff(cc.c1, 1.0 / Complex(0, 1)) <= 1e-8);
    CHECK(cc.conditioning <= kMaxConditioning);
    CHECK(cc.cross_validation_defect <= kMaxCrossValidationDefect);
}

TEST_CASE("connection coefficients of phi match the c-function")
{
    for (const auto& s : testing::preset_spaces()) {
        for (Complex l : {Complex(0.3, -0.6), Complex(1.8, -1.3), Complex(2.5, -0.6)}) {
            SpectralParam lambda(l);
            auto probes = default_connection_probes(lambda);
            std::vector<double> grid = {probes.t_a, probes.t_c, probes.t_b};
            auto u = solve_forward(s, lambda, ModeIndex{}, grid);
            auto frames = frame_solutions(s, lambda, ModeIndex{}, grid);
            auto cc = connection_coefficients(u, frames, probes);
            CHECK(rel_diff(cc.c1, c_function(s, lambda)) <= 1e-6);
            CHECK(rel_diff(cc.c2, c_function(s, lambda.negated())) <= 1e-6);
        }
    }
}

TEST_CASE("a frame decomposes as itself")
{
    auto s = RankOneSpace::from_multiplicities(2, 1);
    SpectralParam lambda(1.2, 0.4);
    auto probes = default_connection_probes(lambda);
    std::vector<double> grid = {probes.t_a, probes.t_c, probes.t_b};
    auto frames = frame_solutions(s, lambda, ModeIndex{1, 2}, grid);
    auto cc = connection_coefficients(frames.plus, frames, probes);
    CHECK(std::abs(cc.c1 - 1.0) <= 1e-10);
    CHECK(std::abs(cc.c2) <= 1e-10);
}

TEST_CASE("connection coefficients do not depend on the probes")
{
    auto s = RankOneSpace::from_multiplicities(4, 3);
    SpectralParam lambda(0.9, 0.35);
    ModeIndex mode{1, 2};
    auto first = default_connection_probes(lambda, 1.0);
    auto second = default_connection_probes(lambda, 2.5);
    std::vector<double> grid = {first.t_a, first.t_c, first.t_b, second.t_a, second.t_c, second.t_b};
    std::sort(grid.begin(), grid.end());
    auto u = solve_forward(s, lambda, mode, grid);
    auto frames = frame_solutions(s, lambda, mode, grid);
    auto a = connection_coefficients(u, frames, first);
    auto b = connection_coefficients(u, frames, second);
    CHECK(rel_diff(a.c1, b.c1) <= 1e-7);
    CHECK(rel_diff(a.c2, b.c2) <= 1e-7);
}

TEST_CASE("connection rejects mismatched or ill-conditioned input")
{
    auto s = RankOneSpace::from_multiplicities(2, 1);
    SpectralParam lambda(1.0);
    auto probes = default_connection_probes(lambda);
    std::vector<double> grid = {probes.t_a, probes.t_c, probes.t_b};
    auto u = solve_forward(s, lambda, ModeIndex{0, 1}, grid);
    auto frames = frame_solutions(s, lambda, ModeIndex{}, grid);
    CHECK_THROWS_AS(connection_coefficients(u, frames, probes), InvalidArgument);

    // nearly coincident probes make the system singular
    ConnectionProbes close{1.0, 1.0 + 1e-10, 1.5};
    std::vector<double> g2 = {1.0, 1.0 + 1e-10, 1.5};
    auto u2 = solve_forward(s, lambda, ModeIndex{}, g2);
    auto f2 = frame_solutions(s, lambda, ModeIndex{}, g2);
    CHECK_THROWS_AS(connection_coefficients(u2, f2, close), NumericalFailure);
}
