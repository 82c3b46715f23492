#include "rankone/ode.hpp"

#include "rankone/errors.hpp"

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace rankone::ode {

namespace {

using RealState = std::array<double, 4>;

RealState pack(const State& s)
{
    return {s.u.real(), s.u.imag(), s.du.real(), s.du.imag()};
}

State unpack(const RealState& x)
{
    return {{x[0], x[1]}, {x[2], x[3]}};
}

double error_norm(const RealState& x, const RealState& err, double rel_tol, double abs_floor)
{
    double scale = std::max(std::hypot(x[0], x[1]), std::hypot(x[2], x[3]));
    double e = std::max(std::hypot(err[0], err[1]), std::hypot(err[2], err[3]));
    return e / (rel_tol * scale + abs_floor);
}

} // namespace

std::vector<State> integrate(const SecondOrderRhs& rhs, double t_start, State y0, std::span<const double> outputs,
                             const Options& options)
{
    std::vector<State> result;
    result.reserve(outputs.size());
    if (outputs.empty()) {
        return result;
    }

    const double direction = outputs.back() >= t_start ? 1.0 : -1.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        double prev = i == 0 ? t_start : outputs[i - 1];
        if (direction * (outputs[i] - prev) < 0) {
            throw InvalidArgument("integration outputs must be monotone in the direction of integration");
        }
    }

    auto system = [&rhs](const RealState& x, RealState& dxdt, double t) {
        State d = rhs(t, unpack(x));
        dxdt = {d.u.real(), d.u.imag(), d.du.real(), d.du.imag()};
    };

    boost::numeric::odeint::runge_kutta_fehlberg78<RealState> stepper;
    RealState x = pack(y0);
    RealState err{};
    double t = t_start;
    double h = options.initial_step;
    long steps = 0;

    for (double target : outputs) {
        while (direction * (target - t) > 0) {
            if (++steps > options.max_steps) {
                throw NumericalFailure("ODE integration exceeded the step budget");
            }
            double remaining = std::abs(target - t);
            double h_try = std::min({h, remaining, options.max_step});
            bool clipped = h_try == remaining;

            RealState trial = x;
            stepper.do_step(system, trial, t, direction * h_try, err);
            double e = error_norm(trial, err, options.rel_tol, options.abs_floor);
            if (!std::isfinite(e)) {
                e = 1e10;
            }

            // Fehlberg 7(8): error estimate is O(h^8).
            double factor = e > 0 ? 0.9 * std::pow(e, -1.0 / 8.0) : 5.0;
            factor = std::clamp(factor, 0.2, 5.0);
            if (e <= 1.0) {
                x = trial;
                t = clipped ? target : t + direction * h_try;
                if (!clipped || factor < 1.0) {
                    h = h_try * factor;
                }
            } else {
                h = h_try * factor;
                if (h < 1e-14 * std::max(1.0, std::abs(t))) {
                    throw NumericalFailure("ODE step size collapsed near t = " + std::to_string(t));
                }
            }
        }
        result.push_back(unpack(x));
    }
    return result;
}

} // namespace rankone::ode
