#pragma once

namespace qoc {

/// Standard normal CDF via erfc; absolute error below 1e-12, no
/// premature underflow in the lower tail.
double normal_cdf(double x);

/// Inverse standard normal CDF (Wichura's PPND16 rational scheme).
double normal_quantile(double p);

double log_gamma(double x);
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// P(Z1 > h, Z2 > k) for standard bivariate normal with correlation rho.
double bivariate_normal_upper(double h, double k, double rho);

}  // namespace qoc
