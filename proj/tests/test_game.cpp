#include <doctest.h>

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "confid/game.hpp"
#include "confid/io.hpp"

using namespace confid;

namespace {

GameConfig small_config(std::uint64_t seed = 90210, int reps = 4000) {
  GameConfig cfg;
  cfg.model = NormalModelSpec{1.0, 1.0, 3};
  cfg.b_suite = default_b_suite();
  cfg.replicates = reps;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("estimator spec parsing") {
  CHECK(EstimatorSpec::parse("calibrated").kind == EstimatorSpec::Kind::Calibrated);
  auto shift = EstimatorSpec::parse("shift:1.5");
  CHECK(shift.kind == EstimatorSpec::Kind::Shift);
  CHECK(shift.value == 1.5);
  auto scale = EstimatorSpec::parse("scale:0.5");
  CHECK(scale.kind == EstimatorSpec::Kind::Scale);
  CHECK(scale.value == 0.5);
  CHECK(scale.description() == "scale:0.5");
  CHECK_THROWS_AS(EstimatorSpec::parse("bogus"), validation_error);
  CHECK_THROWS_AS(EstimatorSpec::parse("shift:abc"), validation_error);
  CHECK_THROWS_AS(EstimatorSpec::parse("scale:-1"), validation_error);
}

TEST_CASE("default B suite spans the levels plus a disconnected index") {
  auto suite = default_b_suite();
  CHECK(suite.size() == 16);
  CHECK(suite.back().first == "disconnected_0.54");
  CHECK(suite.back().second.level() == doctest::Approx(0.54).epsilon(1e-12));
}

TEST_CASE("coverage rate of the calibrated builder matches the level") {
  EstimatorSpec est;
  auto cfg = small_config();
  double rate = coverage_rate(est, SetIndex::central(0.95), cfg);
  // Binomial 3 sigma around 0.95 with 4000 replicates is +-0.0103.
  CHECK(rate > 0.94 - 0.0103);
  CHECK(rate < 0.96 + 0.0103);

  CHECK(coverage_rate(est, SetIndex::empty(), cfg) == 0.0);
  CHECK(coverage_rate(est, SetIndex::lower(1.0), cfg) == 1.0);
}

TEST_CASE("fair odds behave like coverage odds") {
  EstimatorSpec est;
  auto cfg = small_config(31337);
  double even = fair_odds(est, SetIndex::central(0.5), cfg);
  CHECK(std::fabs(even - 1.0) < 0.12);

  double nineteen = fair_odds(est, SetIndex::central(0.95), cfg);
  CHECK(std::fabs(nineteen - 19.0) < 5.0);

  EstimatorSpec shifted{EstimatorSpec::Kind::Shift, 1.0};
  double off = fair_odds(shifted, SetIndex::central(0.95), cfg);
  // Detectably different from 19 (many MC standard errors).
  CHECK(off < 12.0);

  CHECK_THROWS_AS(fair_odds(est, SetIndex::lower(1.0), cfg), odds_error);
  try {
    fair_odds(est, SetIndex::lower(1.0), cfg);
  } catch (const odds_error& e) {
    CHECK(e.coverage_at_one);
    CHECK(e.one_sided_bound == doctest::Approx((4000.0 - 3.0) / 3.0));
  }
}

TEST_CASE("expected loss is null for the calibrated builder") {
  EstimatorSpec est;
  auto cfg = small_config(777);
  for (double rho : {0.5, 0.9, 0.95}) {
    double loss = expected_loss(est, SetIndex::central(rho), cfg);
    double se = std::sqrt(rho * (1.0 - rho) / cfg.replicates);
    CHECK(std::fabs(loss) <= 3.0 * se);
  }
  // Degenerate full-mass index lands in the equality branch.
  CHECK(expected_loss(est, SetIndex::lower(1.0), cfg) == 0.0);
}

TEST_CASE("miscalibrated builders leak a detectable edge") {
  auto cfg = small_config(424242);
  double se95 = std::sqrt(0.95 * 0.05 / cfg.replicates);

  EstimatorSpec shifted{EstimatorSpec::Kind::Shift, 0.5};
  CHECK(expected_loss(shifted, SetIndex::central(0.95), cfg) > 5.0 * se95);

  EstimatorSpec inflated{EstimatorSpec::Kind::Scale, 2.0};
  CHECK(max_risk(inflated, cfg) > 5.0 * se95);

  EstimatorSpec deflated{EstimatorSpec::Kind::Scale, 0.5};
  CHECK(max_risk(deflated, cfg) > 5.0 * se95);

  EstimatorSpec calibrated;
  GameReport report = run_game(calibrated, cfg);
  double max_se = 0.0;
  for (const auto& rec : report.records)
    if (rec.label == report.max_risk_label) max_se = rec.loss_se;
  CHECK(report.max_risk <= 3.0 * std::max(max_se, 1e-12));
}

TEST_CASE("unattainable B endpoints are excluded and surfaced") {
  EstimatorSpec est;
  auto cfg = small_config(1, 1000);
  CHECK_THROWS_AS(coverage_rate(est, SetIndex({{1e-13, 0.5}}), cfg),
                  numeric_error);
}

TEST_CASE("config validation") {
  EstimatorSpec est;
  auto cfg = small_config();
  cfg.replicates = 500;
  CHECK_THROWS_AS(run_game(est, cfg), validation_error);
  cfg = small_config();
  cfg.model.gamma = 0.0;
  CHECK_THROWS_AS(run_game(est, cfg), validation_error);
  cfg = small_config();
  cfg.model.n = 1;
  CHECK_THROWS_AS(run_game(est, cfg), validation_error);
  cfg = small_config();
  cfg.b_suite.clear();
  CHECK_THROWS_AS(run_game(est, cfg), validation_error);
}

TEST_CASE("reports are bit-identical across execution policies and threads") {
  EstimatorSpec est{EstimatorSpec::Kind::Shift, 0.25};
  auto cfg = small_config(20260810, 3000);

  auto serial = game_report_json(run_game(est, cfg, Exec::Serial)).dump();
  auto parallel = game_report_json(run_game(est, cfg, Exec::Parallel)).dump();
  CHECK(serial == parallel);

#ifdef _OPENMP
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto one = game_report_json(run_game(est, cfg, Exec::Parallel)).dump();
  omp_set_num_threads(std::max(2, saved));
  auto many = game_report_json(run_game(est, cfg, Exec::Parallel)).dump();
  omp_set_num_threads(saved);
  CHECK(one == many);
  CHECK(one == serial);
#endif

  auto again = game_report_json(run_game(est, cfg, Exec::Parallel)).dump();
  CHECK(again == parallel);
}

TEST_CASE("calibration ks statistic") {
  EstimatorSpec est;
  auto cfg = small_config(5150, 20000);
  CHECK(calibration_ks(est, cfg) < 0.015);

  EstimatorSpec shifted{EstimatorSpec::Kind::Shift, 1.0};
  CHECK(calibration_ks(shifted, cfg) > 0.1);

  cfg.replicates = 1;
  CHECK(calibration_ks(est, cfg) >= 0.5);
}

TEST_CASE("agent noise calibration") {
  GameConfig cfg;
  cfg.model = NormalModelSpec{0.0, 1.0, 4};
  cfg.replicates = 20000;
  cfg.seed = 616;

  AgentNoiseSpec none{0.0};
  CHECK(agent_noise_calibration(none, cfg) < 0.015);

  AgentNoiseSpec unit{1.0};
  CHECK(agent_noise_calibration(unit, cfg) < 0.015);
  CHECK(agent_noise_calibration(unit, cfg, /*noise_aware=*/false) > 0.1);

  AgentNoiseSpec bad{-0.5};
  CHECK_THROWS_AS(agent_noise_calibration(bad, cfg), validation_error);
}
