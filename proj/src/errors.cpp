#include "rankone/errors.hpp"

#include <sstream>

namespace rankone {

namespace {

std::string excluded_message(std::complex<double> lambda)
{
    std::ostringstream s;
    s << "spectral parameter " << lambda.real() << (lambda.imag() < 0 ? "-" : "+") << std::abs(lambda.imag())
      << "i lies in the excluded lattice i*Z";
    return s.str();
}

} // namespace

ExcludedParameter::ExcludedParameter(std::complex<double> lambda)
    : Error(excluded_message(lambda))
    , lambda_(lambda)
{
}

ConvergenceError::ConvergenceError(const std::string& what, double last_estimate)
    : Error(what + " (last tail estimate " + std::to_string(last_estimate) + ")")
    , last_estimate_(last_estimate)
{
}

} // namespace rankone
