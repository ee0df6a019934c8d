#pragma once

// Double-exponential (Laplace) combination rule: DE, DE^-1, the tail
// polynomials V_L of the L-fold convolution, and the convolution CDF DE_L.

#include <cstdint>
#include <vector>

namespace confid {

// Standard Laplace CDF: e^q/2 for q <= 0, 1 - e^{-q}/2 for q >= 0.
double de_cdf(double q);

// Inverse of de_cdf on (0,1): log(2p) for p <= 1/2, -log(2(1-p)) otherwise.
double de_quantile(double p);

// Coefficients of the degree-(L-1) tail polynomial V_L, constant term
// first; P(S_L > q) = (e^{-q}/2) V_L(q) for q >= 0 where S_L is a sum of
// L independent standard Laplace variates. Constant term is always 1.
struct PolyCoefficients {
  std::vector<double> coefficients;
  int order() const { return static_cast<int>(coefficients.size()); }
};

PolyCoefficients v_polynomial(int order);

// Convolution of L standard Laplace CDFs with the V_L coefficients cached
// for repeated evaluation. Immutable, safe to share across threads.
class LaplaceConvolution {
 public:
  explicit LaplaceConvolution(int order);

  // DE_L(q): (e^q/2) V_L(-q) for q <= 0, 1 - (e^{-q}/2) V_L(q) for q >= 0.
  double cdf(double q) const;
  // Density (e^{-|q|}/2) (V_L - V_L')(|q|).
  double pdf(double q) const;

  int order() const { return order_; }
  const std::vector<double>& v_coefficients() const { return v_; }

 private:
  int order_;
  std::vector<double> v_;  // V_L
  std::vector<double> w_;  // V_L - V_L'
};

// Convenience scalar form (caches convolutions per thread).
double de_l_cdf(int order, double q);

namespace detail {

// Exact rational used to run the V_L recurrence without rounding.
// Numerators/denominators stay within int64 for the supported orders.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// V_L as exact rationals. Orders above kMaxExactOrder overflow int64 and
// are rejected.
inline constexpr int kMaxExactOrder = 16;
std::vector<Rational> v_polynomial_exact(int order);

}  // namespace detail

}  // namespace confid
