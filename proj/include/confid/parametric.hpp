#pragma once

// Significance-curve builders for the sampling models used throughout:
// normal with known sigma, Student t from a sample, and direct subjective
// normal opinions. Also owns the shared probability ladder that places
// grid nodes at fixed quantile levels.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "confid/curve.hpp"

namespace confid {

// n, sample mean, and sample standard deviation (divisor n-1).
struct SampleSummary {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;
};

SampleSummary summarize(std::span<const double> sample);

// Normal sampling model: mean theta (parameter of interest), population
// sd gamma (nuisance), sample size n.
struct NormalModelSpec {
  double theta = 0.0;
  double gamma = 1.0;
  int n = 1;
};

// Fixed probability levels for default grids: 4001 nodes spanning
// [1e-10, 1-1e-10], log-spaced in each tail and uniform in the bulk.
const std::vector<double>& probability_ladder();

// Quantiles of the ladder under the standard normal / Student t pivot.
std::shared_ptr<const std::vector<double>> normal_pivot_ladder();
std::shared_ptr<const std::vector<double>> student_pivot_ladder(int nu);

// Curve whose grid is center + scale * pivot levels, with the ladder
// probabilities as CDF values. Shared storage; cheap to build per replicate.
SignificanceCurve curve_from_pivot(
    double center, double scale,
    const std::shared_ptr<const std::vector<double>>& pivot,
    std::string provenance, bool approximate = false);

// F_x(theta) = Phi((theta - mean)/(sigma/sqrt(n))).
SignificanceCurve sf_normal_known_sigma(const SampleSummary& summary,
                                        double sigma,
                                        std::string provenance = "");

// F_x(theta) = T_{n-1}((theta - mean)/(sd/sqrt(n))).
SignificanceCurve sf_student_t(const SampleSummary& summary,
                               std::string provenance = "");
SignificanceCurve sf_student_t(std::span<const double> sample,
                               std::string provenance = "");

// Subjective opinion N(mean, sd^2) taken directly as a confidence measure.
SignificanceCurve sf_normal_direct(double mean, double sd,
                                   std::string provenance = "");

// n iid draws from Normal(theta, gamma^2); identical for identical seeds.
std::vector<double> simulate_sample(const NormalModelSpec& model,
                                    std::uint64_t seed);

// Mode of the product of normal likelihoods: the precision-weighted mean
// sum(m_i/s_i^2) / sum(1/s_i^2).
double likelihood_product_mode(
    std::span<const std::pair<double, double>> sources);

}  // namespace confid
