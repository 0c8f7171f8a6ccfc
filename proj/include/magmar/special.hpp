// Scalar distribution functions used by the copula families.
#pragma once

namespace magmar {

// Standard normal distribution.
double norm_cdf(double x);
double norm_pdf(double x);
double norm_quantile(double p);

// Student-t distribution with (real) degrees of freedom nu > 0.
double t_cdf(double x, double nu);
double t_pdf(double x, double nu);
double t_log_pdf(double x, double nu);
double t_quantile(double p, double nu);

} // namespace magmar
