#include "rankone/spectral_param.hpp"

#include "rankone/errors.hpp"

#include <cmath>

namespace rankone {

SpectralParam::SpectralParam(Complex lambda)
    : lambda_(lambda)
{
    require_finite(lambda, "spectral parameter");
}

bool SpectralParam::is_excluded() const
{
    return std::abs(re()) <= kTolerance && std::abs(im() - std::round(im())) <= kTolerance;
}

bool SpectralParam::is_real() const
{
    return std::abs(im()) <= kTolerance;
}

bool SpectralParam::is_upper() const
{
    return im() > kTolerance;
}

bool SpectralParam::is_lower() const
{
    return im() < -kTolerance;
}

void SpectralParam::require_admissible() const
{
    if (is_excluded()) {
        throw ExcludedParameter(lambda_);
    }
}

} // namespace rankone
