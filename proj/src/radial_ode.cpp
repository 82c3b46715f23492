#include "rankone/radial_ode.hpp"

#include "rankone/errors.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace rankone {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kGridTolerance = 1e-12;
constexpr std::array<double, 5> kProbeFractions = {0.1, 0.3, 0.5, 0.7, 0.9};

double angular_p(const RankOneSpace& space, ModeIndex mode)
{
    return double(mode.p) * (mode.p + space.m_2gamma() - 1);
}

double angular_q(const RankOneSpace& space, ModeIndex mode)
{
    return double(mode.q) * (mode.q + space.m_gamma() + space.m_2gamma() - 1);
}

Complex eigen_shift(const RankOneSpace& space, SpectralParam lambda)
{
    return lambda.value() * lambda.value() + space.rho() * space.rho();
}

// A(t) - 2 rho, without cancellation at large t (coth x - 1 = 2 / expm1(2x)).
double first_order_excess(const RankOneSpace& space, double t)
{
    return space.m_gamma() * 2.0 / std::expm1(2.0 * t) + 2.0 * space.m_2gamma() * 2.0 / std::expm1(4.0 * t);
}

void require_increasing(std::span<const double> grid, const char* what)
{
    if (grid.empty()) {
        throw InvalidArgument(std::string(what) + ": empty grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) {
            throw InvalidArgument(std::string(what) + ": non-finite grid point");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidArgument(std::string(what) + ": grid must be strictly increasing");
        }
    }
}

// Fornberg weights for the second derivative at x0 from five nodes.
std::array<double, 5> second_derivative_weights(double x0, const std::array<double, 5>& x)
{
    constexpr int n = 4;
    constexpr int m = 2;
    double c[5][3] = {};
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return {c[0][2], c[1][2], c[2][2], c[3][2], c[4][2]};
}

// Residual probes plus their +-h, +-2h stencil neighbours, added to a user
// grid for the integration and stripped again afterwards.
struct AugmentedGrid {
    std::vector<double> points;  // sorted, deduplicated
    std::vector<std::size_t> user_index; // position of each user point in `points`
    std::vector<double> probes;
};

AugmentedGrid augment(std::span<const double> grid, double domain_min, double max_rate)
{
    AugmentedGrid out;
    double lo = std::max(grid.front(), domain_min);
    double hi = std::max(grid.back(), lo + 0.5);
    double width = hi - lo;
    double h = std::min({5e-3, 0.02 / std::max(max_rate, 1e-300), width / 20.0});

    std::vector<double> all(grid.begin(), grid.end());
    for (double f : kProbeFractions) {
        double t = lo + f * width;
        out.probes.push_back(t);
        for (int k = -2; k <= 2; ++k) {
            all.push_back(t + k * h);
        }
    }
    std::sort(all.begin(), all.end());
    for (double t : all) {
        if (out.points.empty() || t - out.points.back() > kGridTolerance) {
            out.points.push_back(t);
        }
    }
    for (double t : grid) {
        auto it = std::lower_bound(out.points.begin(), out.points.end(), t - kGridTolerance);
        out.user_index.push_back(std::size_t(it - out.points.begin()));
    }
    // Snap probes onto the stored points so index lookups are exact.
    for (double& t : out.probes) {
        auto it = std::lower_bound(out.points.begin(), out.points.end(), t - kGridTolerance);
        t = *it;
    }
    return out;
}

void strip_to_user_grid(RadialSolution& solution, const AugmentedGrid& aug, std::span<const double> grid)
{
    std::vector<Complex> u;
    std::vector<Complex> du;
    for (std::size_t idx : aug.user_index) {
        u.push_back(solution.u[idx]);
        du.push_back(solution.du[idx]);
    }
    solution.grid.assign(grid.begin(), grid.end());
    solution.u = std::move(u);
    solution.du = std::move(du);
}

Complex exponent_of(const RankOneSpace& space, Complex s)
{
    return kI * s - space.rho();
}

} // namespace

void ModeIndex::validate(const RankOneSpace& space) const
{
    if (p < 0 || q < p) {
        throw InvalidArgument("mode (p,q) needs q >= p >= 0, got (" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
    if (space.m_2gamma() == 0 && p != 0) {
        throw InvalidArgument("mode p must be 0 on spaces with m_2gamma = 0");
    }
}

RadialCoefficients radial_operator_coefficients(const RankOneSpace& space, ModeIndex mode, double t)
{
    if (!(t > 0.0)) {
        throw InvalidArgument("radial coefficients need t > 0");
    }
    double ch = std::cosh(t);
    double sh = std::sinh(t);
    double A = space.two_rho() + first_order_excess(space, t);
    double B = angular_p(space, mode) / (ch * ch) - angular_q(space, mode) / (sh * sh);
    return {A, B};
}

ode::SecondOrderRhs radial_rhs(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode)
{
    Complex E = eigen_shift(space, lambda);
    return [space, mode, E](double t, const ode::State& y) {
        auto [A, B] = radial_operator_coefficients(space, mode, t);
        return ode::State{y.du, -A * y.du - (B + E) * y.u};
    };
}

std::string_view to_string(SolutionMethod method)
{
    switch (method) {
    case SolutionMethod::kForwardOde:
        return "forward_ode";
    case SolutionMethod::kFramePlus:
        return "backward_frame_plus";
    case SolutionMethod::kFrameMinus:
        return "backward_frame_minus";
    case SolutionMethod::kHypergeometric:
        return "hypergeometric";
    }
    return "unknown";
}

std::size_t RadialSolution::index_of(double t) const
{
    auto it = std::lower_bound(grid.begin(), grid.end(), t - kGridTolerance);
    if (it == grid.end() || std::abs(*it - t) > kGridTolerance) {
        throw InvalidArgument("t = " + std::to_string(t) + " is not a grid point of the solution");
    }
    return std::size_t(it - grid.begin());
}

namespace {

// Regular Frobenius solution u = sum_j c_j t^{q+2j}, c_0 = 1, at t0. With
// t A(t) = sum alpha_k t^{2k} and t^2 B(t) = sum beta_k t^{2k} from the
// Bernoulli expansions of t coth t, t^2/sinh^2 t and t^2/cosh^2 t,
//   c_j [(q+2j)(q+2j-1) + alpha_0 (q+2j) + beta_0]
//     = -sum_{k=1}^{j} c_{j-k} [alpha_k (q+2j-2k) + beta_k] - E c_{j-1}.
ode::State frobenius_data(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode, double t0)
{
    constexpr int kTerms = 12;
    const double m = space.m_gamma();
    const double m2 = space.m_2gamma();
    const double P = angular_p(space, mode);
    const double Q = angular_q(space, mode);
    const double q = mode.q;
    const Complex E = eigen_shift(space, lambda);

    std::array<double, kTerms + 1> alpha{};
    std::array<double, kTerms + 1> beta{};
    double factorial = 1.0; // (2k)!
    for (int k = 0; k <= kTerms; ++k) {
        if (k > 0) {
            factorial *= (2.0 * k - 1.0) * (2.0 * k);
        }
        const double b = boost::math::bernoulli_b2n<double>(k);
        const double four_k = std::pow(4.0, k);
        const double coth_k = four_k * b / factorial;          // t coth t
        const double inv_sinh2_k = -(2.0 * k - 1.0) * coth_k;  // t^2 / sinh^2 t
        const double inv_cosh2_k = k == 0 ? 0.0 : -(four_k - 1.0) * inv_sinh2_k; // t^2 / cosh^2 t
        alpha[k] = m * coth_k + m2 * coth_k * four_k;
        beta[k] = P * inv_cosh2_k - Q * inv_sinh2_k;
    }

    std::array<Complex, kTerms + 1> c{};
    c[0] = 1.0;
    for (int j = 1; j <= kTerms; ++j) {
        const double e = q + 2.0 * j;
        Complex rhs = -E * c[j - 1];
        for (int k = 1; k <= j; ++k) {
            rhs -= c[j - k] * (alpha[k] * (e - 2.0 * k) + beta[k]);
        }
        c[j] = rhs / (e * (e - 1.0) + alpha[0] * e + beta[0]);
    }

    const double t2 = t0 * t0;
    Complex u = 0.0;
    Complex du = 0.0;
    double power = 1.0; // t0^{2j}
    for (int j = 0; j <= kTerms; ++j) {
        u += c[j] * power;
        du += c[j] * (q + 2.0 * j) * power;
        power *= t2;
    }
    const double tq = std::pow(t0, q);
    return {tq * u, tq * du / t0};
}

} // namespace

RadialSolution solve_forward(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                             std::span<const double> grid, const ForwardOptions& options)
{
    mode.validate(space);
    require_increasing(grid, "solve_forward");
    const double t0 = options.t0;
    if (!(t0 > 0.0)) {
        throw InvalidArgument("solve_forward: t0 must be positive");
    }
    if (grid.front() < t0) {
        throw InvalidArgument("solve_forward: grid starts below t0");
    }

    const ode::State y0 = frobenius_data(space, lambda, mode, t0);

    double rate = std::abs(lambda.value()) + space.rho();
    AugmentedGrid aug = augment(grid, t0, rate);

    ode::Options ode_options;
    ode_options.rel_tol = options.rel_tol;
    auto states = ode::integrate(radial_rhs(space, lambda, mode), t0, y0, aug.points, ode_options);

    RadialSolution solution{space, lambda, mode, aug.points, {}, {}, SolutionMethod::kForwardOde, 0.0};
    for (const auto& s : states) {
        solution.u.push_back(s.u);
        solution.du.push_back(s.du);
    }
    solution.residual_sup = residual(solution, aug.probes);
    strip_to_user_grid(solution, aug, grid);
    return solution;
}

ModeSeries::ModeSeries(const RankOneSpace& space, Complex s, ModeIndex mode, double tol, double t_min)
    : exponent_(exponent_of(space, s))
    , tol_(tol)
    , t_min_(t_min)
{
    mode.validate(space);
    require_finite(s, "mode series parameter");
    if (!(t_min > 0.0)) {
        throw InvalidArgument("mode series needs t_min > 0");
    }

    const double m = space.m_gamma();
    const double m2 = space.m_2gamma();
    const double rho = space.rho();
    const double P = angular_p(space, mode);
    const double Q = angular_q(space, mode);
    const Complex is = kI * s;
    const double x = std::exp(-2.0 * t_min);
    constexpr int kMaxTerms = 4000;

    coefficients_.push_back(1.0);
    int K = 16;
    for (;;) {
        for (int k = int(coefficients_.size()); k <= K; ++k) {
            Complex lhs = double(k) * (double(k) - is);
            if (std::abs(lhs) < 1e-12) {
                throw ExcludedParameter(s);
            }
            Complex rhs = 0.0;
            for (int j = 0; j < k; ++j) {
                Complex shift = rho + 2.0 * j - is;
                rhs += 0.5 * m * shift * coefficients_[j];
                int gap = k - j;
                if (gap % 2 == 0) {
                    rhs += m2 * shift * coefficients_[j];
                }
                double sign = (gap - 1) % 2 == 0 ? 1.0 : -1.0;
                rhs -= double(gap) * (P * sign - Q) * coefficients_[j];
            }
            coefficients_.push_back(rhs / lhs);
            if (!std::isfinite(coefficients_.back().real()) || !std::isfinite(coefficients_.back().imag())) {
                throw NumericalFailure("mode series coefficient overflow at k = " + std::to_string(k));
            }
        }
        bound_ = fit_polynomial_growth(coefficients_);

        double abs_sum = 0.0;
        double xk = 1.0;
        for (const Complex& a : coefficients_) {
            abs_sum += std::abs(a) * xk;
            xk *= x;
        }
        double tail = exponential_series_tail(bound_, K, t_min);
        if (tail <= tol * abs_sum) {
            break;
        }
        if (K >= kMaxTerms) {
            throw ConvergenceError("mode series did not converge at t_min", tail / abs_sum);
        }
        K = std::min(2 * K, kMaxTerms);
    }
}

void ModeSeries::check_domain(double t) const
{
    if (!(t >= t_min_ - kGridTolerance)) {
        throw InvalidArgument("series evaluation below t_min = " + std::to_string(t_min_));
    }
}

Complex ModeSeries::scaled(double t) const
{
    check_domain(t);
    const double x = std::exp(-2.0 * t);
    Complex sum = 0.0;
    double xk = 1.0;
    for (const Complex& a : coefficients_) {
        sum += a * xk;
        xk *= x;
        if (xk == 0.0) {
            break;
        }
    }
    return sum;
}

Complex ModeSeries::scaled_derivative(double t) const
{
    check_domain(t);
    const double x = std::exp(-2.0 * t);
    Complex sum = 0.0;
    double xk = x;
    for (std::size_t k = 1; k < coefficients_.size() && xk != 0.0; ++k) {
        sum += -2.0 * double(k) * coefficients_[k] * xk;
        xk *= x;
    }
    return sum;
}

Complex ModeSeries::value(double t) const
{
    return std::exp(exponent_ * t) * scaled(t);
}

Complex ModeSeries::derivative(double t) const
{
    return std::exp(exponent_ * t) * (exponent_ * scaled(t) + scaled_derivative(t));
}

namespace {

struct ScaledFrame {
    std::vector<double> points;
    std::vector<ode::State> v; // v = e^{-mu t} u and v'
    Complex normalization_check;
};

// Integrates v = e^{-mu t} u, which obeys
//   v'' + (A + 2 mu) v' + (B + mu (A - 2 rho)) v = 0
// since lambda^2 + rho^2 + mu^2 + 2 rho mu = 0. v stays O(1) on the frame.
ScaledFrame integrate_frame(const RankOneSpace& space, Complex s, ModeIndex mode, std::span<const double> points,
                            bool backward, double t_norm, double t_max, const FrameOptions& options)
{
    ModeSeries series(space, s, mode, 1e-15, options.t_min);
    const Complex mu = series.exponent();
    auto rhs = [space, mode, mu](double t, const ode::State& y) {
        double ch = std::cosh(t);
        double sh = std::sinh(t);
        double excess = first_order_excess(space, t);
        double B = angular_p(space, mode) / (ch * ch) - angular_q(space, mode) / (sh * sh);
        double A = space.two_rho() + excess;
        return ode::State{y.du, -(A + 2.0 * mu) * y.du - (B + mu * excess) * y.u};
    };

    std::vector<double> outputs(points.begin(), points.end());
    outputs.push_back(t_norm);
    std::sort(outputs.begin(), outputs.end());
    outputs.erase(std::unique(outputs.begin(), outputs.end(),
                              [](double a, double b) { return std::abs(a - b) <= kGridTolerance; }),
                  outputs.end());

    ode::Options ode_options;
    ode_options.rel_tol = options.rel_tol;
    ode_options.max_step = 0.5;

    double t_start = backward ? t_max : outputs.front();
    if (backward) {
        std::reverse(outputs.begin(), outputs.end());
    }
    ode::State y0{series.scaled(t_start), series.scaled_derivative(t_start)};
    auto states = ode::integrate(rhs, t_start, y0, outputs, ode_options);
    if (backward) {
        std::reverse(outputs.begin(), outputs.end());
        std::reverse(states.begin(), states.end());
    }

    ScaledFrame frame;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (std::abs(outputs[i] - t_norm) <= kGridTolerance) {
            frame.normalization_check = states[i].u;
            // t_norm is only kept when it belongs to the requested points.
            if (!std::binary_search(points.begin(), points.end(), outputs[i])) {
                continue;
            }
        }
        frame.points.push_back(outputs[i]);
        frame.v.push_back(states[i]);
    }
    return frame;
}

RadialSolution build_frame(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode, FrameBranch branch,
                           std::span<const double> grid, const FrameOptions& options)
{
    const Complex s = branch == FrameBranch::kPlus ? lambda.value() : -lambda.value();
    const Complex mu = exponent_of(space, s);
    const Complex mu_other = exponent_of(space, -s);
    // Backward integration is stable when this frame decays fastest as t grows.
    const bool backward = lambda.is_real() || mu.real() <= mu_other.real();

    double rate = std::abs(lambda.value()) + space.rho();
    double domain_min = backward ? options.t_min : grid.front();
    AugmentedGrid aug = augment(grid, domain_min, rate);

    const double t_norm = 20.0;
    constexpr double kNormalizationTolerance = 1e-6;
    double t_max = options.t_max;
    ScaledFrame frame;
    for (;;) {
        if (aug.points.back() > t_max - 1.0) {
            throw InvalidArgument("frame grid must stay below t_max - 1");
        }
        frame = integrate_frame(space, s, mode, aug.points, backward, t_norm, t_max, options);
        if (std::abs(frame.normalization_check - 1.0) <= kNormalizationTolerance) {
            break;
        }
        if (t_max >= 60.0) {
            throw NumericalFailure("frame normalization e^{-mu t} u -> 1 failed at t = 20");
        }
        t_max += 10.0;
    }

    RadialSolution solution{space,
                            lambda,
                            mode,
                            aug.points,
                            {},
                            {},
                            branch == FrameBranch::kPlus ? SolutionMethod::kFramePlus : SolutionMethod::kFrameMinus,
                            0.0};
    for (std::size_t i = 0; i < frame.points.size(); ++i) {
        Complex e = std::exp(mu * frame.points[i]);
        solution.u.push_back(e * frame.v[i].u);
        solution.du.push_back(e * (mu * frame.v[i].u + frame.v[i].du));
    }
    solution.residual_sup = residual(solution, aug.probes);
    strip_to_user_grid(solution, aug, grid);
    return solution;
}

} // namespace

FramePair frame_solutions(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                          std::span<const double> grid, const FrameOptions& options)
{
    mode.validate(space);
    lambda.require_admissible();
    if (lambda.is_real() && std::abs(lambda.re()) < 1e-6) {
        throw NumericalFailure("degenerate frame: real lambda with |lambda| < 1e-6");
    }
    require_increasing(grid, "frame_solutions");
    if (options.t_max < 25.0) {
        throw InvalidArgument("frame_solutions needs t_max >= 25");
    }
    if (grid.front() < options.t_min - kGridTolerance) {
        throw InvalidArgument("frame grid starts below t_min");
    }
    return {build_frame(space, lambda, mode, FrameBranch::kPlus, grid, options),
            build_frame(space, lambda, mode, FrameBranch::kMinus, grid, options)};
}

std::string_view to_string(HypergeometricParameters params)
{
    switch (params) {
    case HypergeometricParameters::kPrinted:
        return "printed";
    case HypergeometricParameters::kTabulated:
        return "tabulated";
    case HypergeometricParameters::kCorrected:
        return "corrected";
    }
    return "unknown";
}

namespace {

// u = (tanh t)^q (2 cosh t)^{nu} 2F1(a, b; c; 1/cosh^2 t).
struct HypergeometricForm {
    Complex a;
    Complex b;
    Complex c;
    Complex nu;
};

HypergeometricForm hypergeometric_form(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                                       FrameBranch branch, HypergeometricParameters params)
{
    const double m = space.m_gamma();
    const double m2 = space.m_2gamma();
    const double p = mode.p;
    const double q = mode.q;
    const Complex il = kI * lambda.value();
    const Complex l = il - space.rho();

    if (params == HypergeometricParameters::kPrinted && branch == FrameBranch::kMinus) {
        return {(p + l + q - m + m2 + 1.0) / 2.0, (m + 2.0 * m2 + p + q + l) / 2.0, 1.0 + il, -il - space.rho()};
    }
    const Complex a = params == HypergeometricParameters::kTabulated ? (q - l - p) / 2.0 : (q - l + p) / 2.0;
    const Complex b = (q - l - p - m2 + 1.0) / 2.0;
    const Complex c = q + (m + m2 + 1.0) / 2.0;
    if (branch == FrameBranch::kPlus) {
        return {a, b, a + b - c + 1.0, l};
    }
    // (1-z)^{c-a-b} with 1 - z = 1/cosh^2 t, folded into the (2 cosh t) power.
    return {c - a, c - b, c - a - b + 1.0, l - 2.0 * (c - a - b)};
}

} // namespace

Complex hypergeometric_candidate(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode, double t,
                                 FrameBranch branch, HypergeometricParameters params)
{
    mode.validate(space);
    lambda.require_admissible();
    if (!(t > 0.0)) {
        throw InvalidArgument("hypergeometric candidate needs t > 0");
    }
    auto f = hypergeometric_form(space, lambda, mode, branch, params);
    const double ch = std::cosh(t);
    Complex F;
    try {
        F = gauss_2f1(f.a, f.b, f.c, 1.0 / (ch * ch));
    } catch (const PoleError&) {
        throw ExcludedParameter(lambda.value());
    }
    return std::pow(std::tanh(t), mode.q) * std::exp(f.nu * std::log(2.0 * ch)) * F;
}

RadialSolution sample_hypergeometric(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                                     std::span<const double> grid, FrameBranch branch,
                                     HypergeometricParameters params)
{
    mode.validate(space);
    lambda.require_admissible();
    require_increasing(grid, "sample_hypergeometric");
    if (grid.front() <= 0.0) {
        throw InvalidArgument("hypergeometric grid must be positive");
    }
    auto f = hypergeometric_form(space, lambda, mode, branch, params);
    double rate = std::abs(lambda.value()) + space.rho();
    AugmentedGrid aug = augment(grid, grid.front(), rate);

    RadialSolution solution{space, lambda, mode, aug.points, {}, {}, SolutionMethod::kHypergeometric, 0.0};
    for (double t : aug.points) {
        const double ch = std::cosh(t);
        const double th = std::tanh(t);
        const double z = 1.0 / (ch * ch);
        Complex F;
        Complex dF;
        try {
            F = gauss_2f1(f.a, f.b, f.c, z);
            dF = f.a * f.b / f.c * gauss_2f1(f.a + 1.0, f.b + 1.0, f.c + 1.0, z);
        } catch (const PoleError&) {
            throw ExcludedParameter(lambda.value());
        }
        Complex pre = std::pow(th, mode.q) * std::exp(f.nu * std::log(2.0 * ch));
        // d/dt log pre = q / (sinh cosh) + nu tanh;  dz/dt = -2 tanh z.
        Complex dlog = mode.q / (std::sinh(t) * ch) + f.nu * th;
        solution.u.push_back(pre * F);
        solution.du.push_back(pre * (dlog * F - 2.0 * th * z * dF));
    }
    solution.residual_sup = residual(solution, aug.probes);
    strip_to_user_grid(solution, aug, grid);
    return solution;
}

double residual(const RadialSolution& solution, std::span<const double> probes, double floor)
{
    const Complex E = eigen_shift(solution.space, solution.lambda);
    double sup = 0.0;
    for (double t : probes) {
        std::size_t i;
        try {
            i = solution.index_of(t);
        } catch (const InvalidArgument&) {
            throw InvalidArgument("residual probe t = " + std::to_string(t) + " outside the solution domain");
        }
        if (i < 2 || i + 2 >= solution.grid.size()) {
            throw InvalidArgument("residual probe t = " + std::to_string(t) + " lacks two neighbours on each side");
        }
        std::array<double, 5> nodes;
        for (int k = 0; k < 5; ++k) {
            nodes[k] = solution.grid[i - 2 + k];
        }
        auto w = second_derivative_weights(solution.grid[i], nodes);
        Complex d2 = 0.0;
        for (int k = 0; k < 5; ++k) {
            d2 += w[k] * solution.u[i - 2 + k];
        }
        auto [A, B] = radial_operator_coefficients(solution.space, solution.mode, solution.grid[i]);
        Complex r = d2 + A * solution.du[i] + (B + E) * solution.u[i];
        sup = std::max(sup, std::abs(r) / std::max(std::abs(solution.u[i]), floor));
    }
    return sup;
}

double function_residual(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                         const std::function<Complex(double)>& u, double t, double h, double floor)
{
    if (!(h > 0.0) || t - 2.0 * h <= 0.0) {
        throw InvalidArgument("function_residual: need h > 0 and t > 2h");
    }
    Complex um2 = u(t - 2.0 * h), um1 = u(t - h), u0 = u(t), up1 = u(t + h), up2 = u(t + 2.0 * h);
    // Richardson on central differences with steps 2h and h.
    Complex d1_h = (up1 - um1) / (2.0 * h);
    Complex d1_2h = (up2 - um2) / (4.0 * h);
    Complex d2_h = (up1 - 2.0 * u0 + um1) / (h * h);
    Complex d2_2h = (up2 - 2.0 * u0 + um2) / (4.0 * h * h);
    Complex d1 = (4.0 * d1_h - d1_2h) / 3.0;
    Complex d2 = (4.0 * d2_h - d2_2h) / 3.0;
    auto [A, B] = radial_operator_coefficients(space, mode, t);
    Complex r = d2 + A * d1 + (B + eigen_shift(space, lambda)) * u0;
    return std::abs(r) / std::max(std::abs(u0), floor);
}

double hypergeometric_parameter_residual(const RankOneSpace& space, SpectralParam lambda,
                                         std::span<const ModeIndex> modes, HypergeometricParameters params)
{
    double worst = 0.0;
    for (ModeIndex mode : modes) {
        for (FrameBranch branch : {FrameBranch::kPlus, FrameBranch::kMinus}) {
            auto f = [&](double t) { return hypergeometric_candidate(space, lambda, mode, t, branch, params); };
            for (double t : {0.75, 1.5, 3.0}) {
                for (double h : {1e-3, 5e-4}) {
                    worst = std::max(worst, function_residual(space, lambda, mode, f, t, h));
                }
            }
        }
    }
    return worst;
}

HypergeometricParameters select_hypergeometric_parameters(const RankOneSpace& space, SpectralParam lambda)
{
    std::vector<ModeIndex> modes;
    if (space.m_2gamma() > 0) {
        modes = {{1, 1}, {1, 2}, {2, 2}, {2, 3}};
    } else {
        modes = {{0, 0}, {0, 1}, {0, 2}};
    }
    for (auto params :
         {HypergeometricParameters::kCorrected, HypergeometricParameters::kPrinted, HypergeometricParameters::kTabulated}) {
        if (hypergeometric_parameter_residual(space, lambda, modes, params) <= kResidualLimit) {
            return params;
        }
    }
    throw NumericalFailure("no hypergeometric parameter set passes the residual check");
}

ConnectionProbes default_connection_probes(SpectralParam lambda, double t_a)
{
    double re = std::abs(lambda.re());
    double delta = re > 0 ? std::clamp(M_PI / (2.0 * re), 0.5, 2.0) : 2.0;
    return {t_a, t_a + delta, t_a + 0.5 * delta};
}

ConnectionCoefficients connection_coefficients(const RadialSolution& u, const FramePair& frames,
                                               const ConnectionProbes& probes)
{
    if (!(u.mode == frames.plus.mode) || !(u.mode == frames.minus.mode)) {
        throw InvalidArgument("connection: solution and frames belong to different modes");
    }
    const Complex a11 = frames.plus.value_at(probes.t_a);
    const Complex a12 = frames.minus.value_at(probes.t_a);
    const Complex a21 = frames.plus.value_at(probes.t_b);
    const Complex a22 = frames.minus.value_at(probes.t_b);
    const Complex ya = u.value_at(probes.t_a);
    const Complex yb = u.value_at(probes.t_b);

    // Condition number after scaling rows, then columns, to unit max-norm;
    // rows can differ by e^{-2 rho (t_b - t_a)} without any loss of accuracy.
    // Singular values of a 2x2: sigma^2 = (T +- sqrt(T^2 - 4|det|^2)) / 2, T = ||M||_F^2.
    const double r1 = std::max(std::abs(a11), std::abs(a12));
    const double r2 = std::max(std::abs(a21), std::abs(a22));
    double cond = std::numeric_limits<double>::infinity();
    if (r1 > 0 && r2 > 0) {
        Complex b11 = a11 / r1, b12 = a12 / r1, b21 = a21 / r2, b22 = a22 / r2;
        double n1 = std::hypot(std::abs(b11), std::abs(b21));
        double n2 = std::hypot(std::abs(b12), std::abs(b22));
        b11 /= n1;
        b21 /= n1;
        b12 /= n2;
        b22 /= n2;
        double det_eq = std::abs(b11 * b22 - b12 * b21);
        double T = 2.0;
        double disc = std::sqrt(std::max(0.0, T * T - 4.0 * det_eq * det_eq));
        double s_max = std::sqrt(0.5 * (T + disc));
        double s_min = det_eq / s_max;
        cond = s_min > 0 ? s_max / s_min : cond;
    }
    if (!(cond <= kMaxConditioning)) {
        throw NumericalFailure("connection system ill-conditioned (condition number " + std::to_string(cond) + ")");
    }

    const Complex det = a11 * a22 - a12 * a21;
    ConnectionCoefficients out;
    out.c1 = (ya * a22 - a12 * yb) / det;
    out.c2 = (a11 * yb - ya * a21) / det;
    out.conditioning = cond;

    const Complex yc = u.value_at(probes.t_c);
    const Complex t1 = out.c1 * frames.plus.value_at(probes.t_c);
    const Complex t2 = out.c2 * frames.minus.value_at(probes.t_c);
    double scale = std::max({std::abs(yc), std::abs(t1), std::abs(t2)});
    out.cross_validation_defect = scale > 0 ? std::abs(t1 + t2 - yc) / scale : 0.0;
    if (!(out.cross_validation_defect <= kMaxCrossValidationDefect)) {
        throw NumericalFailure("connection cross-validation failed (defect " +
                               std::to_string(out.cross_validation_defect) + ")");
    }
    return out;
}

} // namespace rankone
