#include "confid/parametric.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "confid/rng.hpp"
#include "confid/special.hpp"

namespace confid {

namespace {

constexpr double kTailMass = 1e-10;
constexpr int kTailNodes = 250;   // per tail, log-spaced down to kTailMass
constexpr int kBulkNodes = 3501;  // uniform between 1e-4 and 1-1e-4
constexpr double kBulkEdge = 1e-4;

std::vector<double> build_ladder() {
  std::vector<double> p;
  p.reserve(2 * kTailNodes + kBulkNodes);
  const double llo = std::log(kTailMass), lhi = std::log(kBulkEdge);
  for (int i = 0; i < kTailNodes; ++i)
    p.push_back(std::exp(llo + (lhi - llo) * i / kTailNodes));
  for (int i = 0; i < kBulkNodes; ++i)
    p.push_back(kBulkEdge + (1.0 - 2.0 * kBulkEdge) * i / (kBulkNodes - 1));
  for (int i = kTailNodes - 1; i >= 0; --i)
    p.push_back(1.0 - std::exp(llo + (lhi - llo) * i / kTailNodes));
  return p;
}

}  // namespace

const std::vector<double>& probability_ladder() {
  static const std::vector<double> ladder = build_ladder();
  return ladder;
}

namespace {

std::shared_ptr<const std::vector<double>> ladder_storage() {
  static const auto p =
      std::make_shared<const std::vector<double>>(probability_ladder());
  return p;
}

}  // namespace

std::shared_ptr<const std::vector<double>> normal_pivot_ladder() {
  static const auto pivot = [] {
    const auto& p = probability_ladder();
    auto z = std::make_shared<std::vector<double>>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) (*z)[i] = normal_quantile(p[i]);
    return std::shared_ptr<const std::vector<double>>(z);
  }();
  return pivot;
}

std::shared_ptr<const std::vector<double>> student_pivot_ladder(int nu) {
  if (nu < 1) throw validation_error("student_pivot_ladder: nu must be >= 1");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const std::vector<double>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(nu);
  if (it != cache.end()) return it->second;
  const auto& p = probability_ladder();
  auto t = std::make_shared<std::vector<double>>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    (*t)[i] = student_t_quantile(p[i], nu);
  auto shared = std::shared_ptr<const std::vector<double>>(t);
  cache.emplace(nu, shared);
  return shared;
}

SignificanceCurve curve_from_pivot(
    double center, double scale,
    const std::shared_ptr<const std::vector<double>>& pivot,
    std::string provenance, bool approximate) {
  if (!(scale > 0.0) || !std::isfinite(center))
    throw validation_error("curve_from_pivot: need finite center, scale > 0");
  std::vector<double> nodes(pivot->size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    nodes[i] = center + scale * (*pivot)[i];
  TailPolicy tails{probability_ladder().front(), probability_ladder().back()};
  return SignificanceCurve::trusted(ParameterGrid::trusted(std::move(nodes)),
                                    ladder_storage(), tails,
                                    std::move(provenance), approximate);
}

SampleSummary summarize(std::span<const double> sample) {
  if (sample.empty()) throw validation_error("summarize: empty sample");
  double m = 0.0;
  for (double x : sample) {
    if (!std::isfinite(x))
      throw validation_error("summarize: sample contains a non-finite value");
    m += x;
  }
  m /= static_cast<double>(sample.size());
  double ss = 0.0;
  for (double x : sample) ss += (x - m) * (x - m);
  SampleSummary s;
  s.n = static_cast<int>(sample.size());
  s.mean = m;
  s.sd = sample.size() > 1 ? std::sqrt(ss / (sample.size() - 1)) : 0.0;
  return s;
}

SignificanceCurve sf_normal_known_sigma(const SampleSummary& summary,
                                        double sigma, std::string provenance) {
  if (!(sigma > 0.0))
    throw validation_error("sf_normal_known_sigma: sigma must be positive");
  if (summary.n < 1)
    throw validation_error("sf_normal_known_sigma: n must be >= 1");
  if (provenance.empty()) provenance = "objective:normal_known_sigma";
  return curve_from_pivot(summary.mean, sigma / std::sqrt(summary.n),
                          normal_pivot_ladder(), std::move(provenance));
}

SignificanceCurve sf_student_t(const SampleSummary& summary,
                               std::string provenance) {
  if (summary.n < 2)
    throw validation_error("sf_student_t: need a sample of size >= 2");
  if (!(summary.sd > 0.0))
    throw validation_error("sf_student_t: sample variance must be nonzero");
  if (provenance.empty()) provenance = "objective:student_t";
  return curve_from_pivot(summary.mean, summary.sd / std::sqrt(summary.n),
                          student_pivot_ladder(summary.n - 1),
                          std::move(provenance));
}

SignificanceCurve sf_student_t(std::span<const double> sample,
                               std::string provenance) {
  return sf_student_t(summarize(sample), std::move(provenance));
}

SignificanceCurve sf_normal_direct(double mean, double sd,
                                   std::string provenance) {
  if (!(sd > 0.0))
    throw validation_error("sf_normal_direct: sd must be positive");
  if (provenance.empty()) provenance = "subjective:normal";
  return curve_from_pivot(mean, sd, normal_pivot_ladder(),
                          std::move(provenance));
}

std::vector<double> simulate_sample(const NormalModelSpec& model,
                                    std::uint64_t seed) {
  if (model.n < 1) throw validation_error("simulate_sample: n must be >= 1");
  if (!(model.gamma > 0.0))
    throw validation_error("simulate_sample: gamma must be positive");
  SplitMix64 rng(seed);
  std::vector<double> out(model.n);
  for (auto& x : out) x = rng.normal(model.theta, model.gamma);
  return out;
}

double likelihood_product_mode(
    std::span<const std::pair<double, double>> sources) {
  if (sources.empty())
    throw validation_error("likelihood_product_mode: no sources");
  double num = 0.0, den = 0.0;
  for (const auto& [mean, sd] : sources) {
    if (!(sd > 0.0))
      throw validation_error("likelihood_product_mode: sd must be positive");
    num += mean / (sd * sd);
    den += 1.0 / (sd * sd);
  }
  return num / den;
}

}  // namespace confid
