#pragma once

// Monotone significance curves on finite grids and the probability /
// quantile / interval extraction operations built on them.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "confid/errors.hpp"

namespace confid {

// Strictly increasing finite grid of parameter values. Immutable and
// cheaply copyable; curves built from the same template share storage.
class ParameterGrid {
 public:
  explicit ParameterGrid(std::vector<double> nodes);
  static ParameterGrid trusted(std::vector<double> nodes);  // skips validation
  static ParameterGrid trusted(std::shared_ptr<const std::vector<double>> nodes);

  const std::vector<double>& nodes() const { return *nodes_; }
  std::size_t size() const { return nodes_->size(); }
  double front() const { return nodes_->front(); }
  double back() const { return nodes_->back(); }

 private:
  friend class SignificanceCurve;
  ParameterGrid() = default;
  std::shared_ptr<const std::vector<double>> nodes_;
};

// CDF values returned for queries left of the first / right of the last
// grid node. Always equal to the edge CDF values in this library.
struct TailPolicy {
  double left = 0.0;
  double right = 1.0;
};

// A significance function F_x represented as a monotone piecewise-linear
// CDF over a parameter grid. Immutable after construction; every operation
// is pure and safe for unsynchronized concurrent use.
class SignificanceCurve {
 public:
  SignificanceCurve(ParameterGrid grid, std::vector<double> cdf_values,
                    TailPolicy tails, std::string provenance,
                    bool approximate = false);

  // Internal fast path for builders whose output is monotone by
  // construction (shared probability ladders).
  static SignificanceCurve trusted(
      ParameterGrid grid, std::shared_ptr<const std::vector<double>> cdf_values,
      TailPolicy tails, std::string provenance, bool approximate = false);

  // F_x(theta) by linear interpolation, clamped to the tail values
  // outside the grid. Non-decreasing in theta.
  double cdf(double theta) const;

  // inf{theta : F_x(theta) >= p} for p in (0,1). Throws tail_error with the
  // attainable probability range when p lies outside the represented mass.
  double quantile(double p) const;

  const ParameterGrid& grid() const { return grid_; }
  const std::vector<double>& cdf_values() const { return *cdf_; }
  std::shared_ptr<const std::vector<double>> cdf_storage() const { return cdf_; }
  const TailPolicy& tails() const { return tails_; }
  const std::string& provenance() const { return provenance_; }
  bool approximate() const { return approximate_; }

  // Smallest/largest probability attainable through the grid.
  double min_probability() const { return cdf_->front(); }
  double max_probability() const { return cdf_->back(); }

 private:
  SignificanceCurve() = default;
  ParameterGrid grid_;
  std::shared_ptr<const std::vector<double>> cdf_;
  TailPolicy tails_;
  std::string provenance_;
  bool approximate_ = false;
};

// Finite union of disjoint half-open parameter intervals (lo, hi].
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<std::pair<double, double>> intervals);
  static IntervalUnion single(double lo, double hi);

  const std::vector<std::pair<double, double>>& intervals() const {
    return intervals_;
  }
  bool empty() const { return intervals_.empty(); }
  bool contains(double x) const;  // lo < x <= hi for some member
  double total_length() const;

 private:
  std::vector<std::pair<double, double>> intervals_;
};

// Finite union of disjoint half-open subintervals (p1, p2] of [0,1],
// indexing a family of set estimators. level() is its Lebesgue measure.
class SetIndex {
 public:
  SetIndex() = default;
  explicit SetIndex(std::vector<std::pair<double, double>> subsets);

  static SetIndex empty() { return SetIndex(); }
  static SetIndex lower(double rho);    // (0, rho]
  static SetIndex upper(double rho);    // (1-rho, 1]
  static SetIndex central(double rho);  // ((1-rho)/2, (1+rho)/2]

  const std::vector<std::pair<double, double>>& subsets() const {
    return subsets_;
  }
  double level() const;

 private:
  std::vector<std::pair<double, double>> subsets_;
};

enum class Alternative { Greater, Less, TwoSided };

// One- and two-sided p-values for the null theta = theta0.
double p_value(const SignificanceCurve& curve, double theta0, Alternative alt);

// (F^-1(alpha1), F^-1(1-alpha2)] with nominal level 1-alpha1-alpha2.
// alpha = 0 extends to the corresponding grid edge.
IntervalUnion central_interval(const SignificanceCurve& curve, double alpha1,
                               double alpha2);

// Confidence assigned to a region: sum of F(hi)-F(lo) over its intervals.
double set_probability(const SignificanceCurve& curve,
                       const IntervalUnion& region);

// Canonical set estimate for index B: each (p1,p2] maps to
// (F^-1(p1), F^-1(p2)]. Endpoints 0 and 1 map to the grid edges.
IntervalUnion index_to_set(const SignificanceCurve& curve, const SetIndex& b);

// Same curve re-evaluated on a uniform grid over [lo, hi] (used for
// explicit grid overrides in evidence files).
SignificanceCurve resample(const SignificanceCurve& curve, double lo, double hi,
                           int points);

}  // namespace confid
