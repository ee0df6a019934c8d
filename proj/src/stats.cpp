#include "confid/stats.hpp"

#include <algorithm>
#include <vector>

#include "confid/errors.hpp"

namespace confid {

double ks_uniform_distance(std::span<const double> values) {
  if (values.empty())
    throw validation_error("ks_uniform_distance: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double di = static_cast<double>(i);
    d = std::max(d, std::max((di + 1.0) / n - sorted[i], sorted[i] - di / n));
  }
  return d;
}

}  // namespace confid
