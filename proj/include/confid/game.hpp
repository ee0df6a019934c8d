#pragma once

// Monte Carlo betting game between a statistician posting fair odds from a
// significance-curve builder and a client who accepts only bets with
// non-negative edge. A calibrated builder has zero expected loss for every
// indexed set; miscalibrated builders leak a detectable edge.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confid/curve.hpp"
#include "confid/elicitation.hpp"
#include "confid/exec.hpp"
#include "confid/parametric.hpp"

namespace confid {

// Deterministic rule mapping a simulated sample to a curve: the t-pivot
// builder, optionally miscalibrated by shifting the pivot (in pivot units)
// or inflating its scale.
struct EstimatorSpec {
  enum class Kind { Calibrated, Shift, Scale };
  Kind kind = Kind::Calibrated;
  double value = 0.0;

  SignificanceCurve build(std::span<const double> sample) const;
  std::string description() const;
  // Accepts "calibrated", "shift:<v>", "scale:<v>".
  static EstimatorSpec parse(std::string_view text);
};

struct GameConfig {
  NormalModelSpec model;
  std::vector<std::pair<std::string, SetIndex>> b_suite;
  int replicates = 10000;
  std::uint64_t seed = 12345;
};

// Levels {0.5, 0.8, 0.9, 0.95, 0.99} as lower, upper and central indices,
// plus one disconnected index (0.05,0.10] u (0.50,0.99].
std::vector<std::pair<std::string, SetIndex>> default_b_suite();

struct BRecord {
  std::string label;
  double level = 0.0;
  double coverage = 0.0;
  double coverage_se = 0.0;
  std::optional<double> fair_odds;  // empty when coverage is degenerate
  double odds_se = 0.0;
  double odds_bound = 0.0;  // one-sided rule-of-three bound when degenerate
  double expected_loss = 0.0;
  double loss_se = 0.0;
  std::int64_t excluded = 0;
};

struct GameReport {
  std::uint64_t seed = 0;
  int replicates = 0;
  std::string estimator;
  NormalModelSpec model;
  std::vector<BRecord> records;
  double max_risk = 0.0;
  std::string max_risk_label;
};

// Runs the full game over the config's B-suite. One replicate stream is
// shared by every statistic; the report is bit-identical for a given seed
// regardless of execution policy or thread count.
GameReport run_game(const EstimatorSpec& est, const GameConfig& cfg,
                    Exec exec = Exec::Parallel);

// Per-operation views over the same machinery.
double coverage_rate(const EstimatorSpec& est, const SetIndex& b,
                     const GameConfig& cfg, Exec exec = Exec::Parallel);
double fair_odds(const EstimatorSpec& est, const SetIndex& b,
                 const GameConfig& cfg, Exec exec = Exec::Parallel);
double expected_loss(const EstimatorSpec& est, const SetIndex& b,
                     const GameConfig& cfg, Exec exec = Exec::Parallel);
double max_risk(const EstimatorSpec& est, const GameConfig& cfg,
                Exec exec = Exec::Parallel);

// Kolmogorov-Smirnov distance of F_X(theta_true) from Uniform(0,1) over
// the replicate stream.
double calibration_ks(const EstimatorSpec& est, const GameConfig& cfg,
                      Exec exec = Exec::Parallel);

// Agent pipeline: every observation carries one shared N(0, tau^2) recall
// error. The noise-aware curve uses sd sqrt(gamma^2/n + tau^2); passing
// noise_aware = false reproduces an agent that ignores its own noise.
double agent_noise_calibration(const AgentNoiseSpec& noise,
                               const GameConfig& cfg, bool noise_aware = true,
                               Exec exec = Exec::Parallel);

}  // namespace confid
