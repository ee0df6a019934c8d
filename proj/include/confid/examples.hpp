#pragma once

// Bundled worked examples exposed through the CLI: the Torricelli
// barometric-pressure problem (subjective opinion combined with one sharp
// measurement) and the two-population common-mean problem with two agent
// opinions. Each report carries the published reference values alongside
// the computed ones with agreement flags.

#include "confid/combine.hpp"
#include "confid/curve.hpp"

namespace confid {

// Argmax of the central finite-difference density of the curve's CDF.
// Coarse pass uses one grid cell as the step; the bracketed peak is then
// re-scanned on a uniform grid with spacing <= refine_step.
double density_mode_by_grid_search(const SignificanceCurve& curve,
                                   double refine_step = 1e-3);

struct TorricelliReport {
  double product_mode;
  double product_mode_reference;
  bool product_agrees;
  double abcu_mode;
  double abcu_mode_reference;
  bool abcu_agrees;
  SignificanceCurve product_curve;   // normalized likelihood product
  SignificanceCurve combined_curve;  // double-exponential combination
};

TorricelliReport example_torricelli(Exec exec = Exec::Parallel);

struct CommonMeanReport {
  double p_two_source;  // combined objective curves, p-value at -1 (greater)
  double p_two_source_reference;
  bool two_source_agrees;
  double p_flat_four;  // simultaneous four-way combination
  double p_flat_four_reference;
  bool flat_four_agrees;
  double p_tree;  // ((objective pair),(subjective pair)) combination
  double p_tree_reference;
  bool tree_agrees;
  double flat_tree_gap;  // non-additivity of the combination
};

CommonMeanReport example_common_mean(Exec exec = Exec::Parallel);

// Inputs shared with the test suites.
namespace worked {
inline constexpr double kSample1[] = {0.523, 2.460, 1.119};
inline constexpr double kSample2[] = {0.072, -2.275, -4.554, -0.077};
inline constexpr double kAgentMean1 = 0.0, kAgentSd1 = 3.0;
inline constexpr double kAgentMean2 = 2.0, kAgentSd2 = 4.0;
inline constexpr double kTorricelliOpinion = 740.0;
inline constexpr double kTorricelliOpinionSd = 25.0;
inline constexpr double kTorricelliMeasurement = 760.0;
inline constexpr double kTorricelliMeasurementSd = 1.0;
}  // namespace worked

}  // namespace confid
