#include "rankone/harish_chandra.hpp"

#include "rankone/errors.hpp"
#include "rankone/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace rankone {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr int kMaxTerms = 5000;

bool near_nonpositive_integer(Complex z, double tol)
{
    return std::abs(z.imag()) <= tol && z.real() <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

// 1/Gamma(z), entire; zero at the poles of Gamma.
Complex reciprocal_gamma(Complex z)
{
    if (near_nonpositive_integer(z, 1e-14)) {
        return 0.0;
    }
    return 1.0 / complex_gamma(z);
}

bool finite(Complex z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace

std::string_view to_string(RecursionVariant variant)
{
    return variant == RecursionVariant::kA ? "A" : "B";
}

HCCoefficients gamma_coefficients(const RankOneSpace& space, SpectralParam lambda, int K, RecursionVariant variant)
{
    lambda.require_admissible();
    if (K < 0) {
        throw InvalidArgument("truncation order K must be >= 0");
    }
    const double half_m = 0.5 * space.m_gamma();
    const double m2 = space.m_2gamma();
    const double rho = space.rho();
    const Complex il = kI * lambda.value();

    HCCoefficients out{lambda, {}, variant};
    out.values.reserve(std::size_t(K) + 1);
    out.values.push_back(1.0);

    // Running sums of w_j G_j with w_j = rho + 2j - i lambda, overall and by parity of j.
    Complex all = 0.0;
    Complex by_parity[2] = {0.0, 0.0};
    for (int k = 0; k < K; ++k) {
        Complex w = (rho + 2.0 * k - il) * out.values[k];
        all += w;
        by_parity[k % 2] += w;

        // j = k + 1 - 2l with l >= 1 has the parity of k + 1.
        Complex rhs = half_m * all + m2 * by_parity[(k + 1) % 2];
        Complex lhs = (k + 1.0) * (k + 1.0 - il);
        if (variant == RecursionVariant::kB) {
            lhs -= m2 * (rho + 2.0 * (k + 1) - il);
        }
        if (std::abs(lhs) < 1e-300) {
            throw NumericalFailure("recursion divisor vanishes at k = " + std::to_string(k + 1));
        }
        Complex next = rhs / lhs;
        if (!finite(next)) {
            throw NumericalFailure("Harish-Chandra coefficient overflow at k = " + std::to_string(k + 1));
        }
        out.values.push_back(next);
    }
    return out;
}

HarishChandraSeries::HarishChandraSeries(const RankOneSpace& space, SpectralParam lambda, double tol, double t_min,
                                         RecursionVariant variant)
    : coefficients_{lambda, {}, variant}
    , exponent_(kI * lambda.value() - space.rho())
    , tol_(tol)
    , t_min_(t_min)
{
    lambda.require_admissible();
    if (!(t_min > 0.0) || !(tol > 0.0)) {
        throw InvalidArgument("Harish-Chandra series needs t_min > 0 and tol > 0");
    }
    int K = 32;
    for (;;) {
        coefficients_ = gamma_coefficients(space, lambda, K, variant);
        bound_ = fit_polynomial_growth(coefficients_.values);
        // The tail bound decays faster in t than the partial sum changes, so
        // meeting it at t_min covers every larger t.
        Complex partial = scaled(t_min);
        double tail = exponential_series_tail(bound_, K, t_min);
        if (tail <= 0.5 * tol * std::abs(partial)) {
            break;
        }
        if (K >= kMaxTerms) {
            throw ConvergenceError("Harish-Chandra tail bound not reached within the term cap",
                                   tail / std::abs(partial));
        }
        K = std::min(2 * K, kMaxTerms);
    }
}

Complex HarishChandraSeries::scaled(double t) const
{
    if (!(t >= t_min_)) {
        throw InvalidArgument("Harish-Chandra series evaluated below t_min = " + std::to_string(t_min_));
    }
    const double x = std::exp(-2.0 * t);
    Complex sum = 0.0;
    double xk = 1.0;
    for (const Complex& g : coefficients_.values) {
        sum += g * xk;
        xk *= x;
        if (xk == 0.0) {
            break;
        }
    }
    return sum;
}

Complex HarishChandraSeries::value(double t) const
{
    return std::exp(exponent_ * t) * scaled(t);
}

double HarishChandraSeries::log_abs(double t) const
{
    return exponent_.real() * t + std::log(std::abs(scaled(t)));
}

double HarishChandraSeries::tail_bound(double t) const
{
    return exponential_series_tail(bound_, int(coefficients_.values.size()) - 1, t);
}

Complex phi_big(const RankOneSpace& space, SpectralParam lambda, double t, double tol, double t_min)
{
    return HarishChandraSeries(space, lambda, tol, t_min).value(t);
}

std::string_view to_string(CFunctionForm form)
{
    return form == CFunctionForm::kStandard ? "standard" : "alternate";
}

Complex c_function_shape(const RankOneSpace& space, SpectralParam lambda, CFunctionForm form)
{
    const Complex il = kI * lambda.value();
    if (near_nonpositive_integer(il, SpectralParam::kTolerance)) {
        throw PoleError("c-function pole at lambda = i*" + std::to_string(lambda.im()));
    }
    const double m = space.m_gamma();
    const double m2 = space.m_2gamma();
    Complex gamma_il;
    try {
        gamma_il = complex_gamma(il);
    } catch (const PoleError&) {
        throw PoleError("c-function pole at lambda = i*" + std::to_string(lambda.im()));
    }
    if (form == CFunctionForm::kStandard) {
        return std::exp(-il * std::log(2.0)) * gamma_il * reciprocal_gamma((0.5 * m + 1.0 + il) / 2.0) *
               reciprocal_gamma((0.5 * m + m2 + il) / 2.0);
    }
    Complex numer = (m + il) / 2.0;
    if (near_nonpositive_integer(numer, 1e-14)) {
        throw PoleError("alternate c-function form has a numerator pole");
    }
    return gamma_il * complex_gamma(numer) * reciprocal_gamma(0.5 * m + il) *
           reciprocal_gamma((space.rho() + il) / 2.0);
}

namespace {

CFunctionCalibration calibrate(const RankOneSpace& space, CFunctionForm form)
{
    const SpectralParam lambda(kCalibrationLambda);
    const double T = kCalibrationTime;
    const double grid[] = {T};
    Complex phi = solve_forward(space, lambda, ModeIndex{}, grid).u.front();
    HarishChandraSeries plus(space, lambda, 1e-14);
    HarishChandraSeries minus(space, lambda.negated(), 1e-14);
    Complex model = c_function_shape(space, lambda, form) * plus.value(T) +
                    c_function_shape(space, lambda.negated(), form) * minus.value(T);

    CFunctionCalibration out;
    out.kappa = phi / model;
    out.lambda_ref = kCalibrationLambda;
    out.t_ref = T;
    try {
        out.kappa_analytic = 1.0 / c_function_shape(space, SpectralParam(Complex(0.0, -space.rho())), form);
    } catch (const Error&) {
        out.kappa_analytic = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

struct CalibrationSlot {
    std::once_flag once;
    CFunctionCalibration value;
};

} // namespace

const CFunctionCalibration& c_function_calibration(const RankOneSpace& space, CFunctionForm form)
{
    static std::mutex registry_mutex;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<CalibrationSlot>> registry;

    CalibrationSlot* slot;
    {
        std::lock_guard lock(registry_mutex);
        auto& entry = registry[{space.m_gamma(), space.m_2gamma(), int(form)}];
        if (!entry) {
            entry = std::make_unique<CalibrationSlot>();
        }
        slot = entry.get();
    }
    std::call_once(slot->once, [&] { slot->value = calibrate(space, form); });
    return slot->value;
}

Complex c_function(const RankOneSpace& space, SpectralParam lambda, CFunctionForm form)
{
    const Complex il = kI * lambda.value();
    if (!near_nonpositive_integer(il, SpectralParam::kTolerance)) {
        lambda.require_admissible();
    }
    Complex shape = c_function_shape(space, lambda, form);
    return c_function_calibration(space, form).kappa * shape;
}

CFormValidation validate_c_form(const RankOneSpace& space, CFunctionForm form, std::span<const Complex> lambdas)
{
    constexpr double T = 15.0;
    const double grid[] = {T};
    CFormValidation out{form, 0.0, false};
    for (Complex z : lambdas) {
        SpectralParam lambda(z);
        Complex phi = solve_forward(space, lambda, ModeIndex{}, grid).u.front();
        Complex limit = std::exp(-(kI * z - space.rho()) * T) * phi;
        Complex c = c_function(space, lambda, form);
        out.max_relative_error = std::max(out.max_relative_error, std::abs(c - limit) / std::abs(limit));
    }
    out.verified = out.max_relative_error <= 1e-6;
    return out;
}

SphericalPhiSeries::SphericalPhiSeries(const RankOneSpace& space, SpectralParam lambda, double tol, double t_min)
    : plus_(space, lambda, tol, t_min)
    , minus_(space, lambda.negated(), tol, t_min)
    , c_plus_(c_function(space, lambda))
    , c_minus_(c_function(space, lambda.negated()))
{
}

Complex SphericalPhiSeries::value(double t) const
{
    return c_plus_ * plus_.value(t) + c_minus_ * minus_.value(t);
}

double SphericalPhiSeries::log_abs(double t) const
{
    const double e_plus = plus_.exponent().real() * t;
    const double e_minus = minus_.exponent().real() * t;
    const double top = std::max(e_plus, e_minus);
    Complex sum = c_plus_ * std::exp(plus_.exponent() * t - top) * plus_.scaled(t) +
                  c_minus_ * std::exp(minus_.exponent() * t - top) * minus_.scaled(t);
    return top + std::log(std::abs(sum));
}

Complex spherical_phi_series(const RankOneSpace& space, SpectralParam lambda, double t, double tol, double t_min)
{
    return SphericalPhiSeries(space, lambda, tol, t_min).value(t);
}

} // namespace rankone
