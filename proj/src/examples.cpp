#include "confid/examples.hpp"

#include <cmath>

#include "confid/elicitation.hpp"
#include "confid/parametric.hpp"

namespace confid {

double density_mode_by_grid_search(const SignificanceCurve& curve,
                                   double refine_step) {
  if (!(refine_step > 0.0))
    throw validation_error("density_mode_by_grid_search: step must be positive");
  const auto& x = curve.grid().nodes();
  const std::size_t n = x.size();

  // Coarse pass: central differences with step = one grid cell.
  std::size_t best = 1;
  double best_d = -1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double d = (curve.cdf(x[i + 1]) - curve.cdf(x[i - 1])) / (x[i + 1] - x[i - 1]);
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }

  // Refined pass over the bracketed peak.
  double lo = x[best >= 2 ? best - 2 : 0];
  double hi = x[std::min(best + 2, n - 1)];
  int steps = static_cast<int>(std::ceil((hi - lo) / refine_step));
  steps = std::max(steps, 4);
  const double h = (hi - lo) / steps;
  double mode = lo;
  best_d = -1.0;
  for (int j = 1; j < steps; ++j) {
    double t = lo + j * h;
    double d = (curve.cdf(t + h) - curve.cdf(t - h)) / (2.0 * h);
    if (d > best_d) {
      best_d = d;
      mode = t;
    }
  }
  return mode;
}

TorricelliReport example_torricelli(Exec exec) {
  using namespace worked;
  const std::pair<double, double> sources[] = {
      {kTorricelliOpinion, kTorricelliOpinionSd},
      {kTorricelliMeasurement, kTorricelliMeasurementSd}};
  double product_mode = likelihood_product_mode(sources);

  // The product of the two normal likelihoods is itself normal.
  double prec = 1.0 / (kTorricelliOpinionSd * kTorricelliOpinionSd) +
                1.0 / (kTorricelliMeasurementSd * kTorricelliMeasurementSd);
  SignificanceCurve product_curve = sf_normal_direct(
      product_mode, 1.0 / std::sqrt(prec), "likelihood_product");

  HypotheticalModel opinion_model;
  opinion_model.sigma = kTorricelliOpinionSd;
  const double opinion_data[] = {kTorricelliOpinion};
  SignificanceCurve subjective =
      sf_from_hypothetical_data(opinion_model, opinion_data);
  SignificanceCurve objective = sf_normal_known_sigma(
      SampleSummary{1, kTorricelliMeasurement, 0.0}, kTorricelliMeasurementSd);

  const SignificanceCurve inputs[] = {subjective, objective};
  SignificanceCurve combined = combine(inputs, exec).curve;
  double abcu_mode = density_mode_by_grid_search(combined);

  TorricelliReport report{
      product_mode,
      759.968,
      std::fabs(product_mode - 759.968) <= 1e-3,
      abcu_mode,
      759.231,
      std::fabs(abcu_mode - 759.231) <= 1e-2,
      std::move(product_curve),
      std::move(combined),
  };
  return report;
}

CommonMeanReport example_common_mean(Exec exec) {
  using namespace worked;
  SignificanceCurve f1 = sf_student_t(std::span<const double>(kSample1));
  SignificanceCurve f2 = sf_student_t(std::span<const double>(kSample2));
  SignificanceCurve g1 = sf_normal_direct(kAgentMean1, kAgentSd1);
  SignificanceCurve g2 = sf_normal_direct(kAgentMean2, kAgentSd2);

  const SignificanceCurve pair_obj[] = {f1, f2};
  double p2 = p_value(combine(pair_obj, exec).curve, -1.0,
                      Alternative::Greater);

  const SignificanceCurve all4[] = {f1, f2, g1, g2};
  double p4 = p_value(combine(all4, exec).curve, -1.0, Alternative::Greater);

  CombineNode tree = CombineNode::group(
      {CombineNode::group({CombineNode::leaf_node(0), CombineNode::leaf_node(1)}),
       CombineNode::group(
           {CombineNode::leaf_node(2), CombineNode::leaf_node(3)})});
  double pt = p_value(combine_tree(tree, all4, exec).curve, -1.0,
                      Alternative::Greater);

  CommonMeanReport report{
      p2,  0.104, std::fabs(p2 - 0.104) <= 1e-3,
      p4,  0.049, std::fabs(p4 - 0.049) <= 1e-3,
      pt,  0.054, std::fabs(pt - 0.054) <= 1e-3,
      std::fabs(p4 - pt),
  };
  return report;
}

}  // namespace confid
