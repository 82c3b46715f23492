#include "rankone/series_tail.hpp"

#include <algorithm>
#include <cmath>

namespace rankone {

PolynomialBound fit_polynomial_growth(std::span<const Complex> coefficients)
{
    PolynomialBound bound;
    const int K = static_cast<int>(coefficients.size()) - 1;

    // Least squares of log|a_k| on log k; zero coefficients carry no information.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int k = 2; k <= K; ++k) {
        double a = std::abs(coefficients[k]);
        if (a == 0.0) {
            continue;
        }
        double x = std::log(double(k));
        double y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        double denom = count * sxx - sx * sx;
        if (denom > 0) {
            bound.d = std::max(0.0, (count * sxy - sx * sy) / denom);
        }
    }

    bound.c = 0.0;
    for (int k = 1; k <= K; ++k) {
        bound.c = std::max(bound.c, std::abs(coefficients[k]) / std::pow(double(k), bound.d));
    }
    if (bound.c == 0.0) {
        bound.c = 1.0;
    }
    return bound;
}

double exponential_series_tail(const PolynomialBound& bound, int K, double t)
{
    double x = std::exp(-2.0 * t);
    double k1 = K + 1.0;
    double log_head = std::log(bound.c) + bound.d * std::log(k1) - 2.0 * t * k1;
    return std::exp(log_head) / (1.0 - x) * (1.0 + bound.d / (2.0 * t * k1));
}

} // namespace rankone
