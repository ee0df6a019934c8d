#pragma once

// Special functions used by the curve builders: normal CDF/quantile,
// regularized incomplete beta, Student t CDF/quantile.

namespace confid {

// Log-gamma by Lanczos approximation (g=7, 9 coefficients), x > 0.
double log_gamma(double x);

// Regularized incomplete beta I_x(a,b), continued fraction (Lentz).
double beta_inc(double a, double b, double x);

// Standard normal CDF and its inverse (Wichura's PPND16 rational
// approximation, |abs error| < 1e-15 on (0,1)).
double normal_cdf(double z);
double normal_quantile(double p);

// Student t distribution with nu degrees of freedom.
double student_t_cdf(double t, int nu);
double student_t_pdf(double t, int nu);
double student_t_quantile(double p, int nu);

}  // namespace confid
