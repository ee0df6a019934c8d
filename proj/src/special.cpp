#include "confid/special.hpp"

#include <cmath>
#include <limits>

#include "confid/errors.hpp"

namespace confid {

double log_gamma(double x) {
  // Lanczos coefficients for g=7.
  static constexpr double kG = 7.0;
  static constexpr double kCoeff[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

  if (x < 0.5) {
    // Reflection formula.
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
  }
  x -= 1.0;
  double a = kCoeff[0];
  for (int i = 1; i < 9; ++i) a += kCoeff[i] / (x + i);
  double t = x + kG + 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's algorithm).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 3.0e-16;
  constexpr double kFpMin = 1.0e-300;

  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double beta_inc(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw validation_error("beta_inc: a, b must be positive");
  if (std::isnan(x)) throw validation_error("beta_inc: x is NaN");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;

  double front = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                          a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double normal_cdf(double z) {
  if (std::isnan(z)) throw validation_error("normal_cdf: z is NaN");
  return 0.5 * std::erfc(-z / M_SQRT2);
}

double normal_quantile(double p) {
  // Wichura's algorithm AS 241, PPND16.
  if (!(p > 0.0 && p < 1.0))
    throw validation_error("normal_quantile: p must lie in (0,1)");

  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

double student_t_cdf(double t, int nu) {
  if (nu < 1) throw validation_error("student_t_cdf: nu must be >= 1");
  if (std::isnan(t)) throw validation_error("student_t_cdf: t is NaN");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  if (t == 0.0) return 0.5;
  const double x = nu / (nu + t * t);
  const double p = 0.5 * beta_inc(0.5 * nu, 0.5, x);
  return t < 0.0 ? p : 1.0 - p;
}

double student_t_pdf(double t, int nu) {
  if (nu < 1) throw validation_error("student_t_pdf: nu must be >= 1");
  const double n = nu;
  double lognorm =
      log_gamma(0.5 * (n + 1.0)) - log_gamma(0.5 * n) - 0.5 * std::log(n * M_PI);
  return std::exp(lognorm - 0.5 * (n + 1.0) * std::log1p(t * t / n));
}

double student_t_quantile(double p, int nu) {
  if (nu < 1) throw validation_error("student_t_quantile: nu must be >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw validation_error("student_t_quantile: p must lie in (0,1)");
  if (p == 0.5) return 0.0;
  // Exploit symmetry so bisection always works on the lower half.
  if (p > 0.5) return -student_t_quantile(1.0 - p, nu);

  double lo = -1.0, hi = 0.0;
  while (student_t_cdf(lo, nu) > p) {
    hi = lo;
    lo *= 8.0;
    if (lo < -1.0e12) break;
  }
  for (int i = 0; i < 90; ++i) {
    double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, nu) < p)
      lo = mid;
    else
      hi = mid;
  }
  // Newton polish.
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double f = student_t_cdf(t, nu) - p;
    double d = student_t_pdf(t, nu);
    if (d <= 0.0) break;
    double step = f / d;
    if (!std::isfinite(step)) break;
    t -= step;
    if (t < lo || t > hi) {  // keep inside the bracket
      t = 0.5 * (lo + hi);
      break;
    }
  }
  return t;
}

}  // namespace confid
