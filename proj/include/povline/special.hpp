#pragma once

#include <cstddef>

namespace povline {

double normal_pdf(double x);
double normal_cdf(double x);

// Inverse of normal_cdf, double precision on (0,1).
double normal_quantile(double p);

// Regularized lower incomplete gamma P(s,x), s > 0, x >= 0.
double gamma_p(double s, double x);

double chisq_cdf(double x, int df);

// Two-sided Kolmogorov asymptotic tail with Stephens' finite-sample
// effective statistic: p = Q((sqrt(n) + 0.12 + 0.11/sqrt(n)) * d).
double ks_p_value(double d, std::size_t n);

}  // namespace povline
