#include "confid/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "confid/laplace.hpp"

namespace confid {

namespace {

constexpr double kTailMass = 1e-10;
constexpr int kTailCompletionNodes = 80;

void check_points(const std::vector<std::pair<double, double>>& pts,
                  const char* what) {
  if (pts.size() < 2) {
    std::ostringstream msg;
    msg << what << ": need at least 2 points";
    throw validation_error(msg.str());
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [theta, p] = pts[i];
    if (!std::isfinite(theta) || !(p > 0.0 && p < 1.0)) {
      std::ostringstream msg;
      msg << what << ": point " << i << " needs finite theta and p in (0,1)";
      throw validation_error(msg.str());
    }
    if (i > 0) {
      auto [t0, p0] = pts[i - 1];
      if (!(theta > t0) || !(p > p0)) {
        std::ostringstream msg;
        msg << what << ": inconsistent elicitation, points " << i - 1 << " ("
            << t0 << ", " << p0 << ") and " << i << " (" << theta << ", " << p
            << ") must be strictly increasing in both coordinates";
        throw validation_error(msg.str());
      }
    }
  }
}

// Extends the curve beyond the outermost elicited points with exponential
// tails: DE^-1(F) continues linearly in theta at the slope of the two
// outermost points, so the completed mass decays like the Laplace pivot.
std::vector<std::pair<double, double>> complete_tails(
    std::vector<std::pair<double, double>> pts) {
  auto pivot_slope = [](const std::pair<double, double>& a,
                        const std::pair<double, double>& b) {
    return (de_quantile(b.second) - de_quantile(a.second)) /
           (b.first - a.first);
  };

  std::vector<std::pair<double, double>> left;
  if (pts.front().second > kTailMass) {
    double m = pivot_slope(pts[0], pts[1]);
    double q1 = de_quantile(pts.front().second);
    double llo = std::log(kTailMass), lhi = std::log(pts.front().second);
    for (int i = 0; i < kTailCompletionNodes; ++i) {
      double p = std::exp(llo + (lhi - llo) * i / kTailCompletionNodes);
      left.emplace_back(pts.front().first + (de_quantile(p) - q1) / m, p);
    }
  }
  std::vector<std::pair<double, double>> right;
  if (pts.back().second < 1.0 - kTailMass) {
    const auto n = pts.size();
    double m = pivot_slope(pts[n - 2], pts[n - 1]);
    double qn = de_quantile(pts.back().second);
    double llo = std::log(kTailMass), lhi = std::log1p(-pts.back().second);
    for (int i = kTailCompletionNodes - 1; i >= 0; --i) {
      double p = 1.0 - std::exp(llo + (lhi - llo) * i / kTailCompletionNodes);
      right.emplace_back(pts.back().first + (de_quantile(p) - qn) / m, p);
    }
  }
  left.insert(left.end(), pts.begin(), pts.end());
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

SignificanceCurve curve_through(std::vector<std::pair<double, double>> pts,
                                std::string provenance, bool approximate) {
  pts = complete_tails(std::move(pts));
  std::vector<double> nodes(pts.size()), values(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    nodes[i] = pts[i].first;
    values[i] = pts[i].second;
  }
  TailPolicy tails{values.front(), values.back()};
  return SignificanceCurve(ParameterGrid(std::move(nodes)), std::move(values),
                           tails, std::move(provenance), approximate);
}

}  // namespace

SignificanceCurve sf_from_hypothetical_data(const HypotheticalModel& model,
                                            std::span<const double> data) {
  if (data.empty())
    throw validation_error("sf_from_hypothetical_data: empty data");
  switch (model.family) {
    case HypotheticalModel::Family::NormalKnownSigma:
      return sf_normal_known_sigma(summarize(data), model.sigma,
                                   "subjective:hypothetical_data");
    case HypotheticalModel::Family::StudentT:
      if (data.size() < 2)
        throw validation_error(
            "sf_from_hypothetical_data: t model needs at least 2 values");
      return sf_student_t(data, "subjective:hypothetical_data");
  }
  throw validation_error("sf_from_hypothetical_data: unknown model family");
}

SignificanceCurve sf_from_elicited_pvalues(const ElicitedPoints& points,
                                           std::string provenance) {
  check_points(points.points, "sf_from_elicited_pvalues");
  if (provenance.empty()) provenance = "subjective:elicited_pvalues";
  return curve_through(points.points, std::move(provenance), false);
}

SignificanceCurve sf_from_elicited_intervals(const ElicitedIntervals& entries,
                                             double median) {
  if (entries.entries.empty())
    throw validation_error("sf_from_elicited_intervals: no intervals");
  if (!std::isfinite(median))
    throw validation_error("sf_from_elicited_intervals: median must be finite");
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(median, 0.5);
  for (const auto& e : entries.entries) {
    if (!(e.level > 0.0 && e.level < 1.0))
      throw validation_error(
          "sf_from_elicited_intervals: levels must lie in (0,1)");
    if (!(e.lo < median && median < e.hi))
      throw validation_error(
          "sf_from_elicited_intervals: inconsistent elicitation, interval at "
          "level " +
          std::to_string(e.level) + " does not straddle the median");
    pts.emplace_back(e.lo, 0.5 * (1.0 - e.level));
    pts.emplace_back(e.hi, 1.0 - 0.5 * (1.0 - e.level));
  }
  std::sort(pts.begin(), pts.end());
  // Crossing (non-nested) intervals surface here as a monotonicity break.
  check_points(pts, "sf_from_elicited_intervals");
  return curve_through(std::move(pts), "subjective:elicited_intervals", false);
}

SignificanceCurve sf_from_bayes_posterior(const ElicitedPoints& posterior_nodes,
                                          bool matching_declared) {
  check_points(posterior_nodes.points, "sf_from_bayes_posterior");
  std::string provenance = matching_declared
                               ? "subjective:posterior(matching)"
                               : "subjective:posterior(unmatched)";
  return curve_through(posterior_nodes.points, std::move(provenance),
                       !matching_declared);
}

}  // namespace confid
