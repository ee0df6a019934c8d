#include <doctest.h>

#include <cmath>
#include <limits>

#include "confid/curve.hpp"
#include "confid/parametric.hpp"
#include "confid/rng.hpp"

using namespace confid;

namespace {

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

SignificanceCurve symmetric_curve(double center, double sd) {
  return sf_normal_direct(center, sd, "test:symmetric");
}

}  // namespace

TEST_CASE("grid and curve validation") {
  CHECK_THROWS_AS(ParameterGrid({1.0}), validation_error);
  CHECK_THROWS_AS(ParameterGrid({1.0, 1.0}), validation_error);
  CHECK_THROWS_AS(ParameterGrid({1.0, 0.5}), validation_error);
  CHECK_THROWS_AS(ParameterGrid({0.0, std::nan("")}), validation_error);

  ParameterGrid g({0.0, 1.0, 2.0});
  CHECK_THROWS_AS(SignificanceCurve(g, {0.1, 0.2}, {}, "short"),
                  validation_error);
  CHECK_THROWS_AS(SignificanceCurve(g, {0.3, 0.2, 0.9}, {}, "non-monotone"),
                  validation_error);
  CHECK_THROWS_AS(SignificanceCurve(g, {0.0, 0.5, 1.5}, {}, "out-of-range"),
                  validation_error);
}

TEST_CASE("eval_cdf at the center of a symmetric curve") {
  auto curve = symmetric_curve(4.5, 2.0);
  CHECK(near(curve.cdf(4.5), 0.5, 1e-12));
  auto torricelli = sf_normal_known_sigma(SampleSummary{1, 760.0, 0.0}, 1.0);
  CHECK(near(torricelli.cdf(760.0), 0.5, 1e-12));
}

TEST_CASE("eval_cdf rejects non-finite input and clamps tails") {
  auto curve = symmetric_curve(0.0, 1.0);
  CHECK_THROWS_AS(curve.cdf(std::nan("")), validation_error);
  CHECK_THROWS_AS(curve.cdf(std::numeric_limits<double>::infinity()),
                  validation_error);
  CHECK(curve.cdf(curve.grid().front() - 100.0) == curve.tails().left);
  CHECK(curve.cdf(curve.grid().back() + 100.0) == curve.tails().right);
}

TEST_CASE("eval_cdf is monotone in theta") {
  auto curve = sf_student_t(SampleSummary{3, 1.5, 0.8});
  SplitMix64 rng(99);
  double span = curve.grid().back() - curve.grid().front();
  for (int i = 0; i < 500; ++i) {
    double a = curve.grid().front() + span * rng.uniform01();
    double b = curve.grid().front() + span * rng.uniform01();
    if (a > b) std::swap(a, b);
    CHECK(curve.cdf(a) <= curve.cdf(b));
  }
}

TEST_CASE("eval_quantile basics and round trip") {
  auto curve = symmetric_curve(0.0, 3.0);
  CHECK(near(curve.quantile(0.5), 0.0, 1e-12));
  // Phi^-1(0.975) * 3
  CHECK(near(curve.quantile(0.975), 5.87989195362, 1e-9));

  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    double p = 1e-9 + (1.0 - 2e-9) * rng.uniform01();
    double theta = curve.quantile(p);
    CHECK(near(curve.cdf(theta), p, 1e-6));
  }
  CHECK_THROWS_AS(curve.quantile(0.0), validation_error);
  CHECK_THROWS_AS(curve.quantile(1.0), validation_error);
  CHECK_THROWS_AS(curve.quantile(1e-12), tail_error);
  try {
    curve.quantile(1e-12);
  } catch (const tail_error& e) {
    CHECK(near(e.attainable_lo, 1e-10, 1e-12));
    CHECK(near(e.attainable_hi, 1.0 - 1e-10, 1e-12));
  }
}

TEST_CASE("quantile takes the infimum on flat segments") {
  ParameterGrid g({0.0, 1.0, 2.0, 3.0});
  SignificanceCurve curve(g, {0.1, 0.5, 0.5, 0.9}, {0.1, 0.9}, "flat");
  CHECK(near(curve.quantile(0.5), 1.0, 1e-12));
}

TEST_CASE("central interval") {
  auto curve = symmetric_curve(0.0, 3.0);
  auto iv = central_interval(curve, 0.025, 0.025);
  REQUIRE(iv.intervals().size() == 1);
  CHECK(near(iv.intervals()[0].first, -5.87989195362, 1e-9));
  CHECK(near(iv.intervals()[0].second, 5.87989195362, 1e-9));

  auto full = central_interval(curve, 0.0, 0.0);
  REQUIRE(full.intervals().size() == 1);
  CHECK(full.intervals()[0].first == curve.grid().front());
  CHECK(full.intervals()[0].second == curve.grid().back());

  auto lower = central_interval(curve, 0.05, 0.0);
  CHECK(near(lower.intervals()[0].first, curve.quantile(0.05), 1e-12));
  CHECK(lower.intervals()[0].second == curve.grid().back());

  CHECK_THROWS_AS(central_interval(curve, -0.1, 0.2), validation_error);
  CHECK_THROWS_AS(central_interval(curve, 0.6, 0.6), validation_error);
}

TEST_CASE("p-values") {
  auto curve = symmetric_curve(1.0, 2.0);
  CHECK(near(p_value(curve, 1.0, Alternative::TwoSided), 1.0, 1e-9));
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    double theta0 = -8.0 + 18.0 * rng.uniform01();
    double g = p_value(curve, theta0, Alternative::Greater);
    double l = p_value(curve, theta0, Alternative::Less);
    CHECK(g + l == 1.0);  // exact complement
    CHECK(p_value(curve, theta0, Alternative::TwoSided) ==
          std::min(2.0 * g, 2.0 * l));
  }
  CHECK_THROWS_AS(p_value(curve, std::nan(""), Alternative::Greater),
                  validation_error);
}

TEST_CASE("set probability: totals and additivity") {
  auto curve = sf_student_t(SampleSummary{4, -1.7085, 2.1794315007970924});
  auto support =
      IntervalUnion::single(curve.grid().front(), curve.grid().back());
  CHECK(near(set_probability(curve, support), 1.0, 1e-9));

  // Probability is additive over any partition of a region.
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    double a = -6.0 + 8.0 * rng.uniform01();
    double c = a + 0.1 + 4.0 * rng.uniform01();
    double b = a + (c - a) * rng.uniform01();
    if (b <= a || c <= b) continue;
    double whole = set_probability(curve, IntervalUnion::single(a, c));
    double parts = set_probability(curve, IntervalUnion({{a, b}, {b, c}}));
    CHECK(near(whole, parts, 1e-12));
  }

  CHECK_THROWS_AS(IntervalUnion({{0.0, 2.0}, {1.0, 3.0}}), validation_error);
}

TEST_CASE("index_to_set level identity") {
  auto curve = symmetric_curve(0.0, 1.0);

  SetIndex central95({{0.025, 0.975}});
  auto set95 = index_to_set(curve, central95);
  auto direct = central_interval(curve, 0.025, 0.025);
  REQUIRE(set95.intervals().size() == 1);
  CHECK(near(set95.intervals()[0].first, direct.intervals()[0].first, 1e-12));
  CHECK(near(set95.intervals()[0].second, direct.intervals()[0].second, 1e-12));

  // Median split with the zero endpoint mapping to the left grid edge.
  SetIndex lower_half({{0.0, 0.5}});
  auto half = index_to_set(curve, lower_half);
  REQUIRE(half.intervals().size() == 1);
  CHECK(half.intervals()[0].first == curve.grid().front());
  CHECK(near(half.intervals()[0].second, 0.0, 1e-12));

  // Disconnected index keeps its pieces and its total confidence.
  SetIndex dis({{0.05, 0.10}, {0.50, 0.99}});
  auto set_dis = index_to_set(curve, dis);
  REQUIRE(set_dis.intervals().size() == 2);
  CHECK(near(set_probability(curve, set_dis), dis.level(), 1e-9));
  CHECK(near(dis.level(), 0.54, 1e-12));

  SplitMix64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    double p1 = rng.uniform01() * 0.9 + 0.01;
    double p2 = p1 + (0.995 - p1) * rng.uniform01();
    if (p2 <= p1) continue;
    SetIndex b({{p1, p2}});
    CHECK(near(set_probability(curve, index_to_set(curve, b)), b.level(), 1e-6));
  }

  CHECK_THROWS_AS(index_to_set(curve, SetIndex({{1e-13, 0.5}})), tail_error);
}

TEST_CASE("set index validation and helpers") {
  CHECK_THROWS_AS(SetIndex({{-0.1, 0.5}}), validation_error);
  CHECK_THROWS_AS(SetIndex({{0.2, 1.2}}), validation_error);
  CHECK_THROWS_AS(SetIndex({{0.2, 0.6}, {0.5, 0.9}}), validation_error);
  CHECK(near(SetIndex::lower(0.95).level(), 0.95, 1e-15));
  CHECK(near(SetIndex::upper(0.9).level(), 0.9, 1e-15));
  CHECK(near(SetIndex::central(0.5).level(), 0.5, 1e-15));
  CHECK(SetIndex::empty().level() == 0.0);
}

TEST_CASE("resample reproduces the curve on a uniform grid") {
  auto curve = symmetric_curve(2.0, 1.5);
  auto re = resample(curve, -1.0, 5.0, 601);
  CHECK(re.grid().size() == 601);
  CHECK(near(re.cdf(2.0), curve.cdf(2.0), 1e-6));
  CHECK(re.grid().front() == -1.0);
  CHECK(re.grid().back() == 5.0);
}
