#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "povline/empirical.hpp"
#include "povline/line.hpp"
#include "povline/measures.hpp"
#include "povline/variance.hpp"

namespace povline {

struct test_result {
    std::string kind;  // "proportionality" | "wald"
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t df = 0;  // chi-square df; 0 for the normal-based test
    bool reject_at_10 = false;
    bool reject_at_05 = false;
    bool reject_at_01 = false;
    std::vector<double> estimate_f, estimate_g;  // per measure
    std::vector<double> variance_f, variance_g;  // per-sqrt(n) scale
    std::vector<double> pooled;                  // pooled covariance, row-major
};

// Two-sample test of J_F = coef * J_G for one measure. The statistic is the
// difference over its pooled standard error; two-sided normal p-value.
test_result proportionality_test(const sample& sf, const sample& sg,
                                 const measure& m, double coef,
                                 const line_spec& line_f,
                                 const line_spec& line_g,
                                 cov_mode cmode = cov_mode::full,
                                 a_mode amode = a_mode::density);

// Joint two-sample test of I_F = M I_G for a vector of measures, M diagonal
// with the given coefficients. Quadratic form solved by a symmetric
// factorization; chi-square reference with d degrees of freedom.
test_result wald_test(const sample& sf, const sample& sg,
                      const std::vector<measure>& measures,
                      const std::vector<double>& coeffs,
                      const line_spec& line_f, const line_spec& line_g,
                      cov_mode cmode = cov_mode::full,
                      a_mode amode = a_mode::density);

}  // namespace povline
