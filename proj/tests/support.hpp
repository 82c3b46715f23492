#pragma once

#include "rankone/space.hpp"
#include "rankone/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

using rankone::Complex;
using rankone::RankOneSpace;

inline std::vector<double> arange(double start, double stop, double step)
{
    std::vector<double> out;
    for (int k = 0;; ++k) {
        double t = start + k * step;
        if (t > stop + 1e-9) {
            break;
        }
        out.push_back(t);
    }
    return out;
}

inline double rel_diff(Complex a, Complex b)
{
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline std::vector<RankOneSpace> preset_spaces()
{
    return {RankOneSpace::from_multiplicities(2, 0), RankOneSpace::from_multiplicities(2, 1),
            RankOneSpace::from_multiplicities(4, 3), RankOneSpace::octonionic_plane()};
}

} // namespace testing
