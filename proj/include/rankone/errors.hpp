#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rankone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad multiplicities, p < 1, empty grids, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Spectral parameter in the excluded lattice i*Z.
class ExcludedParameter : public Error {
  public:
    explicit ExcludedParameter(std::complex<double> lambda);
    std::complex<double> lambda() const { return lambda_; }

  private:
    std::complex<double> lambda_;
};

/// Argument at (or within tolerance of) a pole of a meromorphic function.
class PoleError : public Error {
  public:
    using Error::Error;
};

/// A series or iteration did not reach its tolerance within the term cap.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, double last_estimate);
    double last_estimate() const { return last_estimate_; }

  private:
    double last_estimate_;
};

/// Integration, conditioning or residual failure.
class NumericalFailure : public Error {
  public:
    using Error::Error;
};

} // namespace rankone
