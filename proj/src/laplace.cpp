#include "confid/laplace.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "confid/errors.hpp"

namespace confid {

double de_cdf(double q) {
  if (std::isnan(q)) throw validation_error("de_cdf: q is NaN");
  if (q <= 0.0) return 0.5 * std::exp(q);
  return 1.0 - 0.5 * std::exp(-q);
}

double de_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw validation_error("de_quantile: p must lie in (0,1)");
  if (p <= 0.5) return std::log(2.0 * p);
  return -std::log(2.0 * (1.0 - p));
}

namespace detail {

namespace {

using i128 = __int128;

Rational normalize(i128 num, i128 den) {
  if (den == 0) throw numeric_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax)
    throw numeric_error(
        "v_polynomial: exact coefficients overflow at this order");
  return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Rational add(Rational a, Rational b) {
  return normalize(i128(a.num) * b.den + i128(b.num) * a.den,
                   i128(a.den) * b.den);
}

Rational sub(Rational a, Rational b) {
  return normalize(i128(a.num) * b.den - i128(b.num) * a.den,
                   i128(a.den) * b.den);
}

Rational mul(Rational a, Rational b) {
  return normalize(i128(a.num) * b.num, i128(a.den) * b.den);
}

Rational frac(std::int64_t num, std::int64_t den) {
  return normalize(num, den);
}

std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::int64_t pow2(int k) { return std::int64_t(1) << k; }

}  // namespace

// One step of the tail-polynomial recurrence. Writing the tail of the
// running sum as P(S_L > q) = (e^{-q}/2) V_L(q) with density weight
// W_L = V_L - V_L', adding one more Laplace variate and splitting the
// convolution integral at 0 and q gives, in closed form,
//
//   V_{L+1} = (C_L + int_0^q W_L)/2 + V_L - G_L/2,
//
// where C_L = int_0^inf e^{-2t} W_L(t) dt and G_L is the polynomial with
// int_q^inf e^{-2s} W_L(s) ds = e^{-2q} G_L(q). Both reduce to the moment
// identity int_q^inf e^{-2s} s^k ds = e^{-2q} sum_j k!/(j! 2^{k+1-j}) q^j.
std::vector<Rational> v_polynomial_exact(int order) {
  if (order < 1) throw validation_error("v_polynomial: order must be >= 1");
  if (order > kMaxExactOrder)
    throw numeric_error("v_polynomial: order exceeds exact-coefficient range");

  std::vector<Rational> v{frac(1, 1)};
  for (int l = 1; l < order; ++l) {
    const int deg = static_cast<int>(v.size());  // V_l has deg coefficients
    // W = V - V'
    std::vector<Rational> w(deg);
    for (int k = 0; k < deg; ++k) {
      w[k] = v[k];
      if (k + 1 < deg) w[k] = sub(w[k], mul(frac(k + 1, 1), v[k + 1]));
    }
    // C = sum_k w_k k! / 2^{k+1}
    Rational c = frac(0, 1);
    for (int k = 0; k < deg; ++k)
      c = add(c, mul(w[k], frac(factorial(k), pow2(k + 1))));
    // G[j] = sum_{k>=j} w_k k!/(j! 2^{k+1-j})
    std::vector<Rational> g(deg, frac(0, 1));
    for (int k = 0; k < deg; ++k)
      for (int j = 0; j <= k; ++j)
        g[j] = add(g[j], mul(w[k], frac(factorial(k) / factorial(j),
                                        pow2(k + 1 - j))));
    std::vector<Rational> next(deg + 1, frac(0, 1));
    next[0] = mul(c, frac(1, 2));
    for (int k = 0; k < deg; ++k) {
      // int_0^q W contributes w_{k-1}/k to coefficient k
      next[k + 1] = add(next[k + 1], mul(w[k], frac(1, 2 * (k + 1))));
      next[k] = add(next[k], v[k]);
      next[k] = sub(next[k], mul(g[k], frac(1, 2)));
    }
    v = std::move(next);
  }
  return v;
}

}  // namespace detail

PolyCoefficients v_polynomial(int order) {
  auto exact = detail::v_polynomial_exact(order);
  PolyCoefficients out;
  out.coefficients.reserve(exact.size());
  for (const auto& r : exact)
    out.coefficients.push_back(static_cast<double>(r.num) /
                               static_cast<double>(r.den));
  return out;
}

LaplaceConvolution::LaplaceConvolution(int order) : order_(order) {
  v_ = v_polynomial(order).coefficients;
  w_.resize(v_.size());
  for (std::size_t k = 0; k < v_.size(); ++k) {
    w_[k] = v_[k];
    if (k + 1 < v_.size()) w_[k] -= (k + 1) * v_[k + 1];
  }
}

namespace {

double horner(const std::vector<double>& coeff, double x) {
  double s = 0.0;
  for (std::size_t i = coeff.size(); i-- > 0;) s = s * x + coeff[i];
  return s;
}

}  // namespace

double LaplaceConvolution::cdf(double q) const {
  if (std::isnan(q)) throw validation_error("de_l_cdf: q is NaN");
  double a = std::fabs(q);
  double tail = 0.5 * std::exp(-a) * horner(v_, a);
  return q >= 0.0 ? 1.0 - tail : tail;
}

double LaplaceConvolution::pdf(double q) const {
  double a = std::fabs(q);
  return 0.5 * std::exp(-a) * horner(w_, a);
}

double de_l_cdf(int order, double q) {
  thread_local std::map<int, LaplaceConvolution> cache;
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, LaplaceConvolution(order)).first;
  return it->second.cdf(q);
}

}  // namespace confid
