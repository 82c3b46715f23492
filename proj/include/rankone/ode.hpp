#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace rankone::ode {

/// (u, u') for a complex second-order linear equation.
struct State {
    std::complex<double> u;
    std::complex<double> du;
};

/// Right-hand side: returns (u', u'') at (t, state).
using SecondOrderRhs = std::function<State(double t, const State& y)>;

struct Options {
    double rel_tol = 1e-12;
    double abs_floor = 1e-300; // absolute floor in the error norm
    double initial_step = 1e-3;
    double max_step = 0.25;
    long max_steps = 2'000'000;
};

/// Adaptive explicit Runge-Kutta-Fehlberg 7(8) integration from (t_start, y0)
/// through every point of `outputs`, which must be monotone in the direction of
/// integration (increasing or decreasing). Steps are clipped to land on each
/// output exactly. The error norm is relative to max(|u|, |u'|).
///
/// Throws NumericalFailure on step-size collapse or when max_steps is exceeded.
std::vector<State> integrate(const SecondOrderRhs& rhs, double t_start, State y0, std::span<const double> outputs,
                             const Options& options = {});

} // namespace rankone::ode
