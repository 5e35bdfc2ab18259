#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "povline/distribution.hpp"
#include "povline/empirical.hpp"
#include "povline/estimation.hpp"
#include "povline/line.hpp"
#include "povline/measures.hpp"

namespace povline {

// Which covariance estimator to use.
//
// `full` keeps every interaction produced by the empirical process: on top of
// the plain rank-bridge double sums it carries the cross term between the
// level part h and the weight-derivative bridge (the `coupling` field below),
// places the rank weight of the mixed double sums on the rank-derivative
// factor's own index, and, for estimated lines, also couples the bridge to the
// line influence. Monte Carlo calibration holds in this mode.
//
// `uncoupled` is the plain six-term sum with the mixed weights on the
// opposite index and no coupling terms; kept for comparison runs.
enum class cov_mode { full, uncoupled };
cov_mode parse_cov_mode(const std::string& text);
const char* to_string(cov_mode mode);

// Term-level decomposition of one covariance entry, before line corrections.
struct sigma_breakdown {
    double cross = 0.0;        // (1/n) sum h_k h_l
    double centering = 0.0;    // -(mean h_k)(mean h_l)
    double rank_rank = 0.0;    // wu-wu double sum, weight min(i,j)/n - ij/n^2
    double rank_count = 0.0;   // wu_k against wv_l
    double count_rank = 0.0;   // wv_k against wu_l
    double count_count = 0.0;  // wv-wv term, weight (q/n)(1-q/n)
    double coupling = 0.0;     // level h against the derivative bridge (full mode)
    bool degenerate = false;   // q = 0: nothing below the threshold

    double total() const {
        return cross + centering + rank_rank + rank_count + count_rank +
               count_count + coupling;
    }
};

// Covariance of sqrt(n) (J_k - J_k, J_l - J_l) at a fixed threshold z.
sigma_breakdown sigma_terms(const sample& s, const measure& mk,
                            const measure& ml, double z,
                            cov_mode mode = cov_mode::full);
double sigma_hat(const sample& s, const measure& mk, const measure& ml,
                 double z, cov_mode mode = cov_mode::full);

// Resolved estimated-line state shared by the corrected estimators.
struct line_context {
    double z_hat = 0.0;
    std::size_t q = 0;
    bool fixed = false;
    std::vector<double> zeta;  // per observation, sorted order
    double g_at_z = 0.0;       // density estimate at z_hat, for the a-factor
};

line_context resolve_line(const sample& s, const line_spec& line,
                          const distribution* model = nullptr);

// Covariance corrected for the estimated threshold.
double gamma_hat(const sample& s, const measure& mk, const measure& ml,
                 const line_context& ctx, cov_mode cmode = cov_mode::full,
                 a_mode amode = a_mode::density);
double gamma_hat(const sample& s, const measure& mk, const measure& ml,
                 const line_spec& line, cov_mode cmode = cov_mode::full,
                 a_mode amode = a_mode::density);

// The estimated-line penalty; gamma_hat - sigma_hat = delta_hat on the
// diagonal by construction.
double delta_hat(const sample& s, const measure& m, const line_context& ctx,
                 cov_mode cmode = cov_mode::full,
                 a_mode amode = a_mode::density);
double delta_hat(const sample& s, const measure& m, const line_spec& line,
                 cov_mode cmode = cov_mode::full,
                 a_mode amode = a_mode::density);

// Asymptotic covariance matrix for a vector of measures (variance of
// sqrt(n) (J - J); consumers divide by n).
struct cov_matrix {
    std::size_t dim = 0;
    std::vector<double> entries;             // row-major dim x dim
    std::vector<unsigned char> diag_nonneg;  // per-measure positivity flags
    double max_asymmetry = 0.0;              // pre-symmetrization, relative

    double at(std::size_t i, std::size_t j) const {
        return entries[i * dim + j];
    }
    bool all_diag_nonneg() const;
};

cov_matrix gamma_matrix(const sample& s, const std::vector<measure>& measures,
                        const line_context& ctx,
                        cov_mode cmode = cov_mode::full,
                        a_mode amode = a_mode::density);
cov_matrix gamma_matrix(const sample& s, const std::vector<measure>& measures,
                        const line_spec& line,
                        cov_mode cmode = cov_mode::full,
                        a_mode amode = a_mode::density);

}  // namespace povline
