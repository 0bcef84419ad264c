#pragma once

#include <span>
#include <vector>

namespace rmtev {

// Gaussian kernel density estimate with Silverman's bandwidth
// 1.06 * sd * R^{-1/5} (sd with divisor R - 1).
double silverman_bandwidth(std::span<const double> samples);

std::vector<double> kde(std::span<const double> samples, std::span<const double> grid);

}  // namespace rmtev
