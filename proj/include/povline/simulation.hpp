#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "povline/distribution.hpp"
#include "povline/estimation.hpp"
#include "povline/line.hpp"
#include "povline/measures.hpp"
#include "povline/variance.hpp"

namespace povline {

struct study_config {
    distribution dist;
    std::size_t n = 0;
    std::size_t reps = 0;
    measure m;
    line_spec line;
    std::uint64_t seed = 0;
    bool use_true_density = false;
    cov_mode cmode = cov_mode::full;
    a_mode amode = a_mode::density;
    unsigned jobs = 1;
};

struct replication {
    double t = 0.0;         // standardized statistic, signed
    double p = 0.0;         // two-sided p-value
    double j = 0.0;         // index estimate
    double variance = 0.0;  // variance of the estimate (gamma / n)
    bool excluded = false;
    std::string reason;
};

struct study_report {
    double j_true = 0.0;
    std::size_t excluded = 0;
    double ks_statistic = 0.0;  // signed t values vs standard normal
    double ks_p = 0.0;
    double mean_p = 0.0;
    double coverage_95 = 0.0;  // fraction with |t| <= 1.959964
    double mean_t = 0.0;
    double var_t = 0.0;
    std::vector<replication> reps;
};

// Draw, estimate, standardize, aggregate, `reps` times. Replications are
// distributed over `jobs` threads; per-replication seeded streams and
// index-ordered aggregation make the report identical for any job count.
// Throws if more than 1% of replications had to be excluded.
study_report run_normality_study(const study_config& cfg);

// One-sided helper for the Kolmogorov-Smirnov aggregate: statistic of the
// sorted values against the standard normal CDF.
double ks_against_normal(std::vector<double> values);

}  // namespace povline
