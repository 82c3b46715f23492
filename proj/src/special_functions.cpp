#include "rankone/special_functions.hpp"

#include "rankone/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace rankone {

void require_finite(Complex z, std::string_view what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument(std::string(what) + " must be finite");
    }
}

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's table, as reproduced in
// Numerical Recipes 3rd ed. and the Wikipedia article on the Lanczos approximation).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

constexpr double kPoleTolerance = 1e-14;

bool is_nonpositive_integer(Complex z, double tol)
{
    if (std::abs(z.imag()) > tol || z.real() > tol) {
        return false;
    }
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

Complex lanczos_gamma(Complex z)
{
    z -= 1.0;
    Complex x = kLanczosCoefficients[0];
    for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
        x += kLanczosCoefficients[i] / (z + static_cast<double>(i));
    }
    Complex t = z + kLanczosG + 0.5;
    const double log_sqrt_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return std::exp(log_sqrt_2pi + (z + 0.5) * std::log(t) - t) * x;
}

} // namespace

Complex complex_gamma(Complex z)
{
    require_finite(z, "gamma argument");
    if (is_nonpositive_integer(z, kPoleTolerance)) {
        throw PoleError("gamma pole at z = " + std::to_string(z.real()));
    }
    if (z.real() < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z));
    }
    return lanczos_gamma(z);
}

Complex gauss_2f1(Complex a, Complex b, Complex c, double z, const Hyp2F1Options& options)
{
    require_finite(a, "2F1 parameter a");
    require_finite(b, "2F1 parameter b");
    require_finite(c, "2F1 parameter c");
    if (!(z >= 0.0 && z < 1.0)) {
        throw InvalidArgument("2F1 argument must lie in [0, 1)");
    }
    if (is_nonpositive_integer(c, kPoleTolerance)) {
        throw PoleError("2F1 lower parameter c is a nonpositive integer");
    }
    if (z == 0.0) {
        return 1.0;
    }

    // Terms are rescaled by kScale whenever they grow past it; the final sum is
    // multiplied back. The scale only ever engages for extreme parameters.
    constexpr double kScale = 1e280;
    int scale_count = 0;

    Complex term = 1.0;
    Complex sum = 1.0;
    double tail = std::abs(term);
    const double abs_a = std::abs(a);
    const double abs_b = std::abs(b);
    const double abs_c = std::abs(c);

    for (int k = 0; k < options.max_terms; ++k) {
        const double kk = k;
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
        sum += term;
        if (std::abs(term) > kScale) {
            term /= kScale;
            sum /= kScale;
            ++scale_count;
        }
        if (term == 0.0) {
            break; // a or b hit a nonpositive integer: polynomial
        }

        // For j >= n = k+1 > |c| the ratio |t_{j+1}/t_j| is bounded by
        // z (1+|a|/j)(1+|b|/j) / (1-|c|/j), which decreases in j.
        const double n = kk + 1.0;
        if (n > abs_c) {
            double q = z * (1.0 + abs_a / n) * (1.0 + abs_b / n) / (1.0 - abs_c / n);
            if (q < 1.0) {
                tail = std::abs(term) * q / (1.0 - q);
                if (tail <= options.tol * std::abs(sum)) {
                    double factor = std::pow(kScale, scale_count);
                    Complex result = sum * factor;
                    if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
                        throw NumericalFailure("2F1 value overflows double precision");
                    }
                    return result;
                }
            }
        }
    }
    if (term == 0.0) {
        return sum * std::pow(kScale, scale_count);
    }
    throw ConvergenceError("2F1 series hit the term cap", tail / std::abs(sum));
}

} // namespace rankone
