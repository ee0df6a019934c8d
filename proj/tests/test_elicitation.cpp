#include <doctest.h>

#include <cmath>

#include "confid/elicitation.hpp"
#include "confid/special.hpp"

using namespace confid;

namespace {
bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
}  // namespace

TEST_CASE("elicited p-values reproduce the source at its nodes") {
  ElicitedPoints pts;
  for (double p : {0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.95})
    pts.points.emplace_back(3.0 * normal_quantile(p), p);
  auto curve = sf_from_elicited_pvalues(pts);
  auto reference = sf_normal_direct(0.0, 3.0);
  for (const auto& [theta, p] : pts.points) {
    CHECK(near(curve.cdf(theta), p, 1e-12));
    CHECK(near(reference.cdf(theta), p, 1e-5));
  }
}

TEST_CASE("elicited p-values interpolate linearly between nodes") {
  ElicitedPoints pts;
  pts.points = {{0.0, 0.2}, {1.0, 0.4}};
  auto curve = sf_from_elicited_pvalues(pts);
  CHECK(near(curve.cdf(0.5), 0.3, 1e-12));
}

TEST_CASE("elicitation inconsistencies are rejected with the offending pair") {
  ElicitedPoints decreasing;
  decreasing.points = {{0.0, 0.4}, {1.0, 0.2}};
  CHECK_THROWS_WITH_AS(sf_from_elicited_pvalues(decreasing),
                       doctest::Contains("points 0"), validation_error);

  ElicitedPoints short_input;
  short_input.points = {{0.0, 0.4}};
  CHECK_THROWS_AS(sf_from_elicited_pvalues(short_input), validation_error);

  ElicitedPoints bad_p;
  bad_p.points = {{0.0, 0.0}, {1.0, 0.5}};
  CHECK_THROWS_AS(sf_from_elicited_pvalues(bad_p), validation_error);
}

TEST_CASE("tails are completed with pivot-space exponential decay") {
  ElicitedPoints pts;
  pts.points = {{0.0, 0.2}, {1.0, 0.4}, {2.0, 0.7}};
  auto curve = sf_from_elicited_pvalues(pts);
  CHECK(near(curve.min_probability(), 1e-10, 1e-12));
  CHECK(near(curve.max_probability(), 1.0 - 1e-10, 1e-12));
  // Monotone grid and values all the way through the completed tails.
  const auto& y = curve.cdf_values();
  for (std::size_t i = 1; i < y.size(); ++i) CHECK(y[i] >= y[i - 1]);
  // Original nodes still exact.
  CHECK(near(curve.cdf(1.0), 0.4, 1e-12));
}

TEST_CASE("elicited intervals become central CDF nodes") {
  ElicitedIntervals entry;
  entry.entries = {{0.9, -1.645, 1.645}};
  auto curve = sf_from_elicited_intervals(entry, 0.0);
  CHECK(near(curve.cdf(-1.645), 0.05, 1e-12));
  CHECK(near(curve.cdf(0.0), 0.5, 1e-12));
  CHECK(near(curve.cdf(1.645), 0.95, 1e-12));

  ElicitedIntervals half;
  half.entries = {{0.5, -0.7, 0.7}};
  auto c2 = sf_from_elicited_intervals(half, 0.0);
  CHECK(near(c2.cdf(-0.7), 0.25, 1e-12));
  CHECK(near(c2.cdf(0.7), 0.75, 1e-12));
}

TEST_CASE("re-extracting the elicited intervals round-trips") {
  ElicitedIntervals entries;
  entries.entries = {{0.5, -0.6, 0.8}, {0.9, -1.7, 2.1}};
  auto curve = sf_from_elicited_intervals(entries, 0.1);
  for (const auto& e : entries.entries) {
    auto iv =
        central_interval(curve, 0.5 * (1.0 - e.level), 0.5 * (1.0 - e.level));
    REQUIRE(iv.intervals().size() == 1);
    CHECK(near(iv.intervals()[0].first, e.lo, 1e-9));
    CHECK(near(iv.intervals()[0].second, e.hi, 1e-9));
  }
}

TEST_CASE("crossing intervals are rejected") {
  ElicitedIntervals crossing;
  // The 95% interval fails to contain the 50% one on the left.
  crossing.entries = {{0.5, -2.0, 0.5}, {0.95, -1.0, 3.0}};
  CHECK_THROWS_AS(sf_from_elicited_intervals(crossing, 0.0), validation_error);

  ElicitedIntervals not_straddling;
  not_straddling.entries = {{0.5, 1.0, 2.0}};
  CHECK_THROWS_AS(sf_from_elicited_intervals(not_straddling, 0.0),
                  validation_error);

  ElicitedIntervals none;
  CHECK_THROWS_AS(sf_from_elicited_intervals(none, 0.0), validation_error);
}

TEST_CASE("hypothetical data routes to the matching builder") {
  HypotheticalModel normal_model;
  normal_model.sigma = 25.0;
  const double opinion[] = {740.0};
  auto curve = sf_from_hypothetical_data(normal_model, opinion);
  CHECK(near(curve.cdf(740.0), 0.5, 1e-12));
  CHECK(near(curve.cdf(765.0), 0.84134474606854294859, 1e-5));
  CHECK(curve.provenance() == "subjective:hypothetical_data");

  HypotheticalModel t_model;
  t_model.family = HypotheticalModel::Family::StudentT;
  const double pair_data[] = {1.0, 3.0};
  auto t_curve = sf_from_hypothetical_data(t_model, pair_data);
  CHECK(near(t_curve.cdf(2.0), 0.5, 1e-12));
  const double lone[] = {1.0};
  CHECK_THROWS_AS(sf_from_hypothetical_data(t_model, lone), validation_error);
}

TEST_CASE("imported posteriors carry the matching flag") {
  ElicitedPoints nodes;
  for (double p : {0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.98})
    nodes.points.emplace_back(2.0 + 0.5 * normal_quantile(p), p);

  auto matched = sf_from_bayes_posterior(nodes, true);
  CHECK_FALSE(matched.approximate());
  // Flat-prior normal-location posterior equals the known-sigma curve.
  auto direct = sf_normal_known_sigma(SampleSummary{4, 2.0, 0.0}, 1.0);
  for (const auto& [theta, p] : nodes.points)
    CHECK(near(matched.cdf(theta), direct.cdf(theta), 1e-5));

  auto unmatched = sf_from_bayes_posterior(nodes, false);
  CHECK(unmatched.approximate());
  for (const auto& [theta, p] : nodes.points)
    CHECK(unmatched.cdf(theta) == matched.cdf(theta));

  ElicitedPoints bad;
  bad.points = {{0.0, 0.5}, {1.0, 0.4}};
  CHECK_THROWS_AS(sf_from_bayes_posterior(bad, true), validation_error);
}
