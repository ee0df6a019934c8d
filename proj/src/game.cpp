#include "confid/game.hpp"

#include <cmath>
#include <sstream>

#include "confid/rng.hpp"
#include "confid/stats.hpp"

namespace confid {

namespace {

// Replicates are processed in fixed blocks of this size, each with its own
// sub-seed, so results do not depend on the execution policy or thread
// count. Blocks are merged in index order with integer tallies.
constexpr int kBlockSize = 256;

template <typename Fn>
void for_each_block(int replicates, std::uint64_t seed, Exec exec, Fn&& fn) {
  const int nblocks = (replicates + kBlockSize - 1) / kBlockSize;
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < nblocks; ++b) {
      SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(b)));
      const int lo = b * kBlockSize;
      const int hi = std::min(replicates, lo + kBlockSize);
      for (int r = lo; r < hi; ++r) fn(b, r, rng);
    }
  } else {
    for (int b = 0; b < nblocks; ++b) {
      SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(b)));
      const int lo = b * kBlockSize;
      const int hi = std::min(replicates, lo + kBlockSize);
      for (int r = lo; r < hi; ++r) fn(b, r, rng);
    }
  }
}

void check_config(const GameConfig& cfg, bool for_report) {
  if (!(cfg.model.gamma > 0.0))
    throw validation_error("game: model gamma must be positive");
  if (cfg.model.n < 2)
    throw validation_error("game: t-pivot builders need n >= 2");
  if (cfg.replicates < 1)
    throw validation_error("game: replicates must be >= 1");
  if (for_report && cfg.replicates < 1000)
    throw validation_error("game: reported statistics need >= 1000 replicates");
  if (for_report && cfg.b_suite.empty())
    throw validation_error("game: B-suite must be non-empty");
}

struct Tally {
  std::vector<std::int64_t> cover;
  std::vector<std::int64_t> excluded;
};

Tally game_pass(const EstimatorSpec& est, const GameConfig& cfg,
                std::span<const std::pair<std::string, SetIndex>> suite,
                Exec exec) {
  const int nb = static_cast<int>(suite.size());
  const int nblocks = (cfg.replicates + kBlockSize - 1) / kBlockSize;
  std::vector<std::int64_t> cover(static_cast<std::size_t>(nblocks) * nb, 0);
  std::vector<std::int64_t> excl(static_cast<std::size_t>(nblocks) * nb, 0);

  for_each_block(cfg.replicates, cfg.seed, exec,
                 [&](int block, int /*rep*/, SplitMix64& rng) {
                   std::vector<double> sample(cfg.model.n);
                   for (auto& x : sample)
                     x = rng.normal(cfg.model.theta, cfg.model.gamma);
                   SignificanceCurve curve = est.build(sample);
                   for (int k = 0; k < nb; ++k) {
                     std::size_t slot =
                         static_cast<std::size_t>(block) * nb + k;
                     try {
                       IntervalUnion set = index_to_set(curve, suite[k].second);
                       if (set.contains(cfg.model.theta)) ++cover[slot];
                     } catch (const tail_error&) {
                       ++excl[slot];
                     }
                   }
                 });

  Tally t;
  t.cover.assign(nb, 0);
  t.excluded.assign(nb, 0);
  for (int b = 0; b < nblocks; ++b)
    for (int k = 0; k < nb; ++k) {
      t.cover[k] += cover[static_cast<std::size_t>(b) * nb + k];
      t.excluded[k] += excl[static_cast<std::size_t>(b) * nb + k];
    }
  return t;
}

// The three-case loss against a client who compares the posted odds
// rho/(1-rho) with the estimated fair odds. Equality is declared within
// two Monte Carlo standard errors of the odds estimate; in the outer cases
// the loss estimate reduces to +/-(rho - coverage).
BRecord make_record(const std::string& label, const SetIndex& b,
                    std::int64_t cover, std::int64_t excluded,
                    std::int64_t replicates) {
  BRecord rec;
  rec.label = label;
  rec.level = b.level();
  rec.excluded = excluded;
  const std::int64_t n = replicates - excluded;
  if (n <= 0) throw numeric_error("game: every replicate was excluded for " + label);
  const double nn = static_cast<double>(n);
  const double c = static_cast<double>(cover) / nn;
  rec.coverage = c;
  rec.coverage_se = std::sqrt(std::max(c * (1.0 - c), 0.0) / nn);

  const double rho = rec.level;
  const double posted =
      rho < 1.0 ? rho / (1.0 - rho) : std::numeric_limits<double>::infinity();

  if (c > 0.0 && c < 1.0) {
    const double omega = c / (1.0 - c);
    rec.fair_odds = omega;
    rec.odds_se = rec.coverage_se / ((1.0 - c) * (1.0 - c));
    if (std::isfinite(posted) && std::fabs(posted - omega) <= 2.0 * rec.odds_se) {
      rec.expected_loss = 0.0;
    } else if (posted > omega) {
      rec.expected_loss = rho - c;
    } else {
      rec.expected_loss = c - rho;
    }
  } else {
    // Degenerate coverage: the odds ratio is 0 or infinite. Report the
    // one-sided rule-of-three bound and fall back to comparing on the
    // coverage scale, where the standard error is exactly zero.
    rec.fair_odds.reset();
    rec.odds_se = 0.0;
    if (c == 1.0)
      rec.odds_bound = nn > 3.0 ? (nn - 3.0) / 3.0 : 0.0;
    else
      rec.odds_bound = nn > 3.0 ? 3.0 / (nn - 3.0) : 0.0;
    if (rho == c)
      rec.expected_loss = 0.0;
    else if (rho > c)
      rec.expected_loss = rho - c;
    else
      rec.expected_loss = c - rho;
  }
  rec.loss_se = rec.coverage_se;
  return rec;
}

}  // namespace

SignificanceCurve EstimatorSpec::build(std::span<const double> sample) const {
  SampleSummary s = summarize(sample);
  if (s.n < 2 || !(s.sd > 0.0))
    throw validation_error("estimator: t-pivot needs n >= 2 and nonzero sd");
  const double se = s.sd / std::sqrt(s.n);
  double center = s.mean, scale = se;
  switch (kind) {
    case Kind::Calibrated:
      break;
    case Kind::Shift:
      center += se * value;
      break;
    case Kind::Scale:
      scale *= value;
      break;
  }
  return curve_from_pivot(center, scale, student_pivot_ladder(s.n - 1),
                          description());
}

std::string EstimatorSpec::description() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Calibrated:
      return "calibrated";
    case Kind::Shift:
      out << "shift:" << value;
      break;
    case Kind::Scale:
      out << "scale:" << value;
      break;
  }
  return out.str();
}

EstimatorSpec EstimatorSpec::parse(std::string_view text) {
  EstimatorSpec spec;
  if (text == "calibrated") return spec;
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    std::string head(text.substr(0, colon));
    std::string tail(text.substr(colon + 1));
    try {
      std::size_t used = 0;
      double v = std::stod(tail, &used);
      if (used == tail.size()) {
        if (head == "shift") {
          spec.kind = Kind::Shift;
          spec.value = v;
          return spec;
        }
        if (head == "scale") {
          if (!(v > 0.0))
            throw validation_error("estimator: scale must be positive");
          spec.kind = Kind::Scale;
          spec.value = v;
          return spec;
        }
      }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  throw validation_error(
      "estimator: expected 'calibrated', 'shift:<v>' or 'scale:<v>', got '" +
      std::string(text) + "'");
}

std::vector<std::pair<std::string, SetIndex>> default_b_suite() {
  std::vector<std::pair<std::string, SetIndex>> suite;
  for (double rho : {0.5, 0.8, 0.9, 0.95, 0.99}) {
    std::ostringstream tag;
    tag << rho;
    suite.emplace_back("lower_" + tag.str(), SetIndex::lower(rho));
    suite.emplace_back("upper_" + tag.str(), SetIndex::upper(rho));
    suite.emplace_back("central_" + tag.str(), SetIndex::central(rho));
  }
  suite.emplace_back("disconnected_0.54",
                     SetIndex({{0.05, 0.10}, {0.50, 0.99}}));
  return suite;
}

GameReport run_game(const EstimatorSpec& est, const GameConfig& cfg,
                    Exec exec) {
  check_config(cfg, /*for_report=*/true);
  Tally tally = game_pass(est, cfg, cfg.b_suite, exec);

  GameReport report;
  report.seed = cfg.seed;
  report.replicates = cfg.replicates;
  report.estimator = est.description();
  report.model = cfg.model;
  report.max_risk = -1.0;
  for (std::size_t k = 0; k < cfg.b_suite.size(); ++k) {
    BRecord rec = make_record(cfg.b_suite[k].first, cfg.b_suite[k].second,
                              tally.cover[k], tally.excluded[k],
                              cfg.replicates);
    if (rec.expected_loss > report.max_risk) {
      report.max_risk = rec.expected_loss;
      report.max_risk_label = rec.label;
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

double coverage_rate(const EstimatorSpec& est, const SetIndex& b,
                     const GameConfig& cfg, Exec exec) {
  check_config(cfg, /*for_report=*/false);
  std::vector<std::pair<std::string, SetIndex>> suite{{"b", b}};
  Tally tally = game_pass(est, cfg, suite, exec);
  const std::int64_t n = cfg.replicates - tally.excluded[0];
  if (n <= 0) throw numeric_error("coverage_rate: every replicate excluded");
  return static_cast<double>(tally.cover[0]) / static_cast<double>(n);
}

double fair_odds(const EstimatorSpec& est, const SetIndex& b,
                 const GameConfig& cfg, Exec exec) {
  double c = coverage_rate(est, b, cfg, exec);
  const double n = static_cast<double>(cfg.replicates);
  if (c == 1.0)
    throw odds_error("fair_odds: coverage estimate is 1; odds at least " +
                         std::to_string((n - 3.0) / 3.0) +
                         " (rule of three)",
                     (n - 3.0) / 3.0, true);
  if (c == 0.0)
    throw odds_error("fair_odds: coverage estimate is 0; odds at most " +
                         std::to_string(3.0 / (n - 3.0)) +
                         " (rule of three)",
                     3.0 / (n - 3.0), false);
  return c / (1.0 - c);
}

double expected_loss(const EstimatorSpec& est, const SetIndex& b,
                     const GameConfig& cfg, Exec exec) {
  check_config(cfg, /*for_report=*/false);
  std::vector<std::pair<std::string, SetIndex>> suite{{"b", b}};
  Tally tally = game_pass(est, cfg, suite, exec);
  return make_record("b", b, tally.cover[0], tally.excluded[0], cfg.replicates)
      .expected_loss;
}

double max_risk(const EstimatorSpec& est, const GameConfig& cfg, Exec exec) {
  check_config(cfg, /*for_report=*/false);
  if (cfg.b_suite.empty())
    throw validation_error("max_risk: B-suite must be non-empty");
  Tally tally = game_pass(est, cfg, cfg.b_suite, exec);
  double risk = -1.0;
  for (std::size_t k = 0; k < cfg.b_suite.size(); ++k) {
    BRecord rec = make_record(cfg.b_suite[k].first, cfg.b_suite[k].second,
                              tally.cover[k], tally.excluded[k],
                              cfg.replicates);
    risk = std::max(risk, rec.expected_loss);
  }
  return risk;
}

double calibration_ks(const EstimatorSpec& est, const GameConfig& cfg,
                      Exec exec) {
  check_config(cfg, /*for_report=*/false);
  std::vector<double> u(cfg.replicates);
  for_each_block(cfg.replicates, cfg.seed, exec,
                 [&](int /*block*/, int rep, SplitMix64& rng) {
                   std::vector<double> sample(cfg.model.n);
                   for (auto& x : sample)
                     x = rng.normal(cfg.model.theta, cfg.model.gamma);
                   u[rep] = est.build(sample).cdf(cfg.model.theta);
                 });
  return ks_uniform_distance(u);
}

double agent_noise_calibration(const AgentNoiseSpec& noise,
                               const GameConfig& cfg, bool noise_aware,
                               Exec exec) {
  if (!(noise.noise_sd >= 0.0))
    throw validation_error("agent_noise_calibration: tau must be >= 0");
  if (!(cfg.model.gamma > 0.0))
    throw validation_error("agent_noise_calibration: gamma must be positive");
  if (cfg.model.n < 1)
    throw validation_error("agent_noise_calibration: n must be >= 1");
  if (cfg.replicates < 1)
    throw validation_error("agent_noise_calibration: replicates must be >= 1");

  const double tau = noise.noise_sd;
  const double var_mean = cfg.model.gamma * cfg.model.gamma / cfg.model.n;
  const double sd_used =
      noise_aware ? std::sqrt(var_mean + tau * tau) : std::sqrt(var_mean);

  std::vector<double> u(cfg.replicates);
  for_each_block(cfg.replicates, cfg.seed, exec,
                 [&](int /*block*/, int rep, SplitMix64& rng) {
                   double mean = 0.0;
                   for (int i = 0; i < cfg.model.n; ++i)
                     mean += rng.normal(cfg.model.theta, cfg.model.gamma);
                   mean /= cfg.model.n;
                   double recall = tau > 0.0 ? rng.normal(0.0, tau) : 0.0;
                   double tbar = mean + recall;
                   SampleSummary s{1, tbar, 0.0};
                   SignificanceCurve curve = sf_normal_known_sigma(
                       s, sd_used, "subjective:agent_noise");
                   u[rep] = curve.cdf(cfg.model.theta);
                 });
  return ks_uniform_distance(u);
}

}  // namespace confid
