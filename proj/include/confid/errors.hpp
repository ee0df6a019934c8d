#pragma once

#include <stdexcept>
#include <string>

namespace confid {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs: domain violations, inconsistent elicitations, malformed
// evidence files, incompatible sources. Maps to CLI exit code 2.
struct validation_error : error {
  using error::error;
};

// Numerical failures encountered on otherwise valid inputs.
// Maps to CLI exit code 3.
struct numeric_error : error {
  using error::error;
};

// Probability query outside the mass represented by a curve's grid.
// Carries the attainable probability range so callers can adjust.
struct tail_error : numeric_error {
  tail_error(const std::string& msg, double lo, double hi)
      : numeric_error(msg), attainable_lo(lo), attainable_hi(hi) {}
  double attainable_lo;
  double attainable_hi;
};

// Degenerate Monte Carlo coverage (0 or 1) makes the odds ratio infinite.
// Carries the one-sided bound implied by the replicate count.
struct odds_error : numeric_error {
  odds_error(const std::string& msg, double bound, bool at_one)
      : numeric_error(msg), one_sided_bound(bound), coverage_at_one(at_one) {}
  double one_sided_bound;  // odds bound in the direction of the degeneracy
  bool coverage_at_one;    // true: coverage==1 (bound is a lower bound on odds)
};

}  // namespace confid
