#pragma once

#include <span>

namespace confid {

// One-sample Kolmogorov-Smirnov distance between the empirical CDF of the
// values and the Uniform(0,1) CDF.
double ks_uniform_distance(std::span<const double> values);

}  // namespace confid
