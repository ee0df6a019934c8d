#include "confid/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace confid {

namespace {

void check_nodes(const std::vector<double>& nodes) {
  if (nodes.size() < 2)
    throw validation_error("parameter grid needs at least 2 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]))
      throw validation_error("parameter grid contains a non-finite node");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw validation_error("parameter grid nodes must be strictly increasing");
  }
}

}  // namespace

ParameterGrid::ParameterGrid(std::vector<double> nodes) {
  check_nodes(nodes);
  nodes_ = std::make_shared<const std::vector<double>>(std::move(nodes));
}

ParameterGrid ParameterGrid::trusted(std::vector<double> nodes) {
  ParameterGrid g;
  g.nodes_ = std::make_shared<const std::vector<double>>(std::move(nodes));
  return g;
}

ParameterGrid ParameterGrid::trusted(
    std::shared_ptr<const std::vector<double>> nodes) {
  ParameterGrid g;
  g.nodes_ = std::move(nodes);
  return g;
}

SignificanceCurve::SignificanceCurve(ParameterGrid grid,
                                     std::vector<double> cdf_values,
                                     TailPolicy tails, std::string provenance,
                                     bool approximate)
    : grid_(std::move(grid)),
      tails_(tails),
      provenance_(std::move(provenance)),
      approximate_(approximate) {
  if (cdf_values.size() != grid_.size())
    throw validation_error("curve: cdf value count does not match grid size");
  for (std::size_t i = 0; i < cdf_values.size(); ++i) {
    double v = cdf_values[i];
    if (!(v >= 0.0 && v <= 1.0))
      throw validation_error("curve: cdf values must lie in [0,1]");
    if (i > 0 && v < cdf_values[i - 1])
      throw validation_error("curve: cdf values must be non-decreasing");
  }
  cdf_ = std::make_shared<const std::vector<double>>(std::move(cdf_values));
}

SignificanceCurve SignificanceCurve::trusted(
    ParameterGrid grid, std::shared_ptr<const std::vector<double>> cdf_values,
    TailPolicy tails, std::string provenance, bool approximate) {
  SignificanceCurve c;
  c.grid_ = std::move(grid);
  c.cdf_ = std::move(cdf_values);
  c.tails_ = tails;
  c.provenance_ = std::move(provenance);
  c.approximate_ = approximate;
  return c;
}

double SignificanceCurve::cdf(double theta) const {
  if (!std::isfinite(theta))
    throw validation_error("cdf: theta must be finite");
  const auto& x = grid_.nodes();
  const auto& y = *cdf_;
  if (theta <= x.front()) return theta == x.front() ? y.front() : tails_.left;
  if (theta >= x.back()) return theta == x.back() ? y.back() : tails_.right;
  auto it = std::upper_bound(x.begin(), x.end(), theta);
  std::size_t i = static_cast<std::size_t>(it - x.begin());  // x[i-1] <= theta < x[i]
  double w = (theta - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + w * (y[i] - y[i - 1]);
}

double SignificanceCurve::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw validation_error("quantile: p must lie in (0,1)");
  const auto& x = grid_.nodes();
  const auto& y = *cdf_;
  if (p < y.front() || p > y.back()) {
    std::ostringstream msg;
    msg << "quantile: p=" << p << " outside the represented mass ["
        << y.front() << ", " << y.back() << "]";
    throw tail_error(msg.str(), y.front(), y.back());
  }
  auto it = std::lower_bound(y.begin(), y.end(), p);  // first y[i] >= p
  std::size_t i = static_cast<std::size_t>(it - y.begin());
  if (i == 0) return x.front();
  // y[i-1] < p <= y[i]; linear inversion gives the infimum, landing on the
  // left edge of any flat stretch.
  double w = (p - y[i - 1]) / (y[i] - y[i - 1]);
  return x[i - 1] + w * (x[i] - x[i - 1]);
}

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> intervals)
    : intervals_(std::move(intervals)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    auto [lo, hi] = intervals_[i];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw validation_error("interval union: intervals must satisfy lo < hi");
    if (i > 0 && intervals_[i - 1].second > lo)
      throw validation_error("interval union: intervals overlap or are unsorted");
  }
}

IntervalUnion IntervalUnion::single(double lo, double hi) {
  return IntervalUnion({{lo, hi}});
}

bool IntervalUnion::contains(double x) const {
  for (const auto& [lo, hi] : intervals_)
    if (lo < x && x <= hi) return true;
  return false;
}

double IntervalUnion::total_length() const {
  double s = 0.0;
  for (const auto& [lo, hi] : intervals_) s += hi - lo;
  return s;
}

SetIndex::SetIndex(std::vector<std::pair<double, double>> subsets)
    : subsets_(std::move(subsets)) {
  for (std::size_t i = 0; i < subsets_.size(); ++i) {
    auto [lo, hi] = subsets_[i];
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi))
      throw validation_error("set index: subsets must satisfy 0 <= lo < hi <= 1");
    if (i > 0 && subsets_[i - 1].second > lo)
      throw validation_error("set index: subsets overlap or are unsorted");
  }
}

SetIndex SetIndex::lower(double rho) {
  if (!(rho > 0.0 && rho <= 1.0))
    throw validation_error("set index: level must lie in (0,1]");
  return SetIndex({{0.0, rho}});
}

SetIndex SetIndex::upper(double rho) {
  if (!(rho > 0.0 && rho <= 1.0))
    throw validation_error("set index: level must lie in (0,1]");
  return SetIndex({{1.0 - rho, 1.0}});
}

SetIndex SetIndex::central(double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw validation_error("set index: central level must lie in (0,1)");
  return SetIndex({{0.5 * (1.0 - rho), 0.5 * (1.0 + rho)}});
}

double SetIndex::level() const {
  double s = 0.0;
  for (const auto& [lo, hi] : subsets_) s += hi - lo;
  return s;
}

double p_value(const SignificanceCurve& curve, double theta0, Alternative alt) {
  double f = curve.cdf(theta0);
  switch (alt) {
    case Alternative::Greater:
      return f;
    case Alternative::Less:
      return 1.0 - f;
    case Alternative::TwoSided:
      return std::min(2.0 * f, 2.0 * (1.0 - f));
  }
  throw validation_error("p_value: unknown alternative");
}

IntervalUnion central_interval(const SignificanceCurve& curve, double alpha1,
                               double alpha2) {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0) || !(alpha1 + alpha2 <= 1.0))
    throw validation_error(
        "central_interval: need alpha1, alpha2 >= 0 and alpha1+alpha2 <= 1");
  double lo = alpha1 == 0.0 ? curve.grid().front() : curve.quantile(alpha1);
  double hi = alpha2 == 0.0 ? curve.grid().back() : curve.quantile(1.0 - alpha2);
  if (!(lo < hi)) return IntervalUnion();  // level-0 interval degenerates
  return IntervalUnion::single(lo, hi);
}

double set_probability(const SignificanceCurve& curve,
                       const IntervalUnion& region) {
  double s = 0.0;
  for (const auto& [lo, hi] : region.intervals())
    s += curve.cdf(hi) - curve.cdf(lo);
  return s;
}

IntervalUnion index_to_set(const SignificanceCurve& curve, const SetIndex& b) {
  std::vector<std::pair<double, double>> out;
  out.reserve(b.subsets().size());
  for (const auto& [p1, p2] : b.subsets()) {
    double lo = p1 == 0.0 ? curve.grid().front() : curve.quantile(p1);
    double hi = p2 == 1.0 ? curve.grid().back() : curve.quantile(p2);
    if (lo < hi) out.emplace_back(lo, hi);  // flat stretches carry no mass
  }
  return IntervalUnion(std::move(out));
}

SignificanceCurve resample(const SignificanceCurve& curve, double lo, double hi,
                           int points) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw validation_error("resample: need finite lo < hi");
  if (points < 2) throw validation_error("resample: need at least 2 points");
  std::vector<double> nodes(points), values(points);
  for (int i = 0; i < points; ++i) {
    nodes[i] = lo + (hi - lo) * i / (points - 1);
    values[i] = curve.cdf(nodes[i]);
  }
  TailPolicy tails{values.front(), values.back()};
  return SignificanceCurve(ParameterGrid(std::move(nodes)), std::move(values),
                           tails, curve.provenance(), curve.approximate());
}

}  // namespace confid
