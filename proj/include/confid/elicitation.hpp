#pragma once

// Subjective significance curves from agent input: hypothetical data,
// elicited lower-tailed p-values, elicited central intervals, or an
// imported Bayesian posterior.

#include <span>
#include <string>
#include <vector>

#include "confid/curve.hpp"
#include "confid/parametric.hpp"

namespace confid {

// (theta, p) pairs, both strictly increasing, p in (0,1).
struct ElicitedPoints {
  std::vector<std::pair<double, double>> points;
};

// Central intervals (level, lo, hi) at distinct levels; higher levels must
// contain lower ones.
struct ElicitedIntervals {
  struct Entry {
    double level;
    double lo;
    double hi;
  };
  std::vector<Entry> entries;
};

// Scale tau of the shared additive recall error applied to every
// observation an agent remembers.
struct AgentNoiseSpec {
  double noise_sd = 0.0;
};

// Sampling model an agent's hypothetical data is referred to.
struct HypotheticalModel {
  enum class Family { NormalKnownSigma, StudentT };
  Family family = Family::NormalKnownSigma;
  double sigma = 1.0;  // used by NormalKnownSigma
};

SignificanceCurve sf_from_hypothetical_data(const HypotheticalModel& model,
                                            std::span<const double> data);

// Monotone piecewise-linear CDF through the elicited points, with
// exponential tails in pivot space completing the mass beyond them.
SignificanceCurve sf_from_elicited_pvalues(const ElicitedPoints& points,
                                           std::string provenance = "");

// Converts each central level-rho interval to the CDF nodes
// (lo, (1-rho)/2) and (hi, 1-(1-rho)/2), adds (median, 1/2), and proceeds
// as sf_from_elicited_pvalues.
SignificanceCurve sf_from_elicited_intervals(const ElicitedIntervals& entries,
                                             double median);

// Wraps posterior CDF nodes as a significance curve. When matching was not
// declared the curve is flagged approximate; values are unchanged.
SignificanceCurve sf_from_bayes_posterior(const ElicitedPoints& posterior_nodes,
                                          bool matching_declared);

}  // namespace confid
