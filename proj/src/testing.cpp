#include "povline/testing.hpp"

#include <cmath>

#include "povline/errors.hpp"
#include "povline/estimation.hpp"
#include "povline/special.hpp"

namespace povline {
namespace {

void fill_rejections(test_result& r) {
    r.reject_at_10 = r.p_value < 0.10;
    r.reject_at_05 = r.p_value < 0.05;
    r.reject_at_01 = r.p_value < 0.01;
}

// LDL^T factorization with a positivity pivot check; returns the solution of
// V x = b. On a failing pivot, names the most correlated earlier coordinate.
std::vector<double> solve_spd(const std::vector<double>& v, std::size_t d,
                              std::vector<double> b,
                              const std::vector<measure>& ms) {
    std::vector<double> lower(d * d, 0.0);
    std::vector<double> diag(d, 0.0);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        max_diag = std::max(max_diag, std::abs(v[i * d + i]));
    const double tol = 1e-10 * max_diag;

    for (std::size_t k = 0; k < d; ++k) {
        double dk = v[k * d + k];
        for (std::size_t m = 0; m < k; ++m)
            dk -= lower[k * d + m] * lower[k * d + m] * diag[m];
        if (!(dk > tol)) {
            std::size_t worst = 0;
            double worst_corr = -1.0;
            for (std::size_t j = 0; j < k; ++j) {
                const double denom =
                    std::sqrt(v[k * d + k] * v[j * d + j]);
                const double corr =
                    denom > 0.0 ? std::abs(v[k * d + j]) / denom : 1.0;
                if (corr > worst_corr) {
                    worst_corr = corr;
                    worst = j;
                }
            }
            if (k == 0)
                throw degenerate_error(
                    "pooled covariance is singular at measure " + ms[0].name());
            throw degenerate_error(
                "pooled covariance is singular; measures " + ms[worst].name() +
                " and " + ms[k].name() + " are (nearly) linearly dependent");
        }
        diag[k] = dk;
        for (std::size_t i = k + 1; i < d; ++i) {
            double acc = v[i * d + k];
            for (std::size_t m = 0; m < k; ++m)
                acc -= lower[i * d + m] * lower[k * d + m] * diag[m];
            lower[i * d + k] = acc / dk;
        }
    }
    // forward: L z = b
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t m = 0; m < i; ++m) b[i] -= lower[i * d + m] * b[m];
    // diagonal
    for (std::size_t i = 0; i < d; ++i) b[i] /= diag[i];
    // backward: L^T x = z
    for (std::size_t i = d; i >= 1; --i)
        for (std::size_t m = i; m < d; ++m)
            b[i - 1] -= lower[m * d + (i - 1)] * b[m];
    return b;
}

}  // namespace

test_result proportionality_test(const sample& sf, const sample& sg,
                                 const measure& m, double coef,
                                 const line_spec& line_f,
                                 const line_spec& line_g, cov_mode cmode,
                                 a_mode amode) {
    if (!(coef >= 0.0) || !std::isfinite(coef))
        throw validation_error("proportionality coefficient must be nonnegative");
    const double nf = static_cast<double>(sf.size());
    const double ng = static_cast<double>(sg.size());

    const double jf = j_relative(sf, m, line_f);
    const double jg = j_relative(sg, m, line_g);
    const double gf = gamma_hat(sf, m, m, line_f, cmode, amode);
    const double gg = gamma_hat(sg, m, m, line_g, cmode, amode);
    if (!(gf > 0.0))
        throw degenerate_error("variance estimate for the first sample is " +
                               std::to_string(gf) + "; cannot standardize");
    if (!(gg > 0.0))
        throw degenerate_error("variance estimate for the second sample is " +
                               std::to_string(gg) + "; cannot standardize");

    const double pooled = gf / nf + coef * coef * gg / ng;
    test_result r;
    r.kind = "proportionality";
    r.statistic = (jf - coef * jg) / std::sqrt(pooled);
    r.p_value = 2.0 * (1.0 - normal_cdf(std::abs(r.statistic)));
    r.estimate_f = {jf};
    r.estimate_g = {jg};
    r.variance_f = {gf};
    r.variance_g = {gg};
    r.pooled = {pooled};
    fill_rejections(r);
    return r;
}

test_result wald_test(const sample& sf, const sample& sg,
                      const std::vector<measure>& measures,
                      const std::vector<double>& coeffs,
                      const line_spec& line_f, const line_spec& line_g,
                      cov_mode cmode, a_mode amode) {
    const std::size_t d = measures.size();
    if (d == 0) throw validation_error("wald test needs at least one measure");
    if (coeffs.size() != d)
        throw validation_error("wald test needs one coefficient per measure (" +
                               std::to_string(d) + " measures, " +
                               std::to_string(coeffs.size()) + " coefficients)");
    for (double c : coeffs)
        if (!(c > 0.0) || !std::isfinite(c))
            throw validation_error("wald coefficients must be positive");

    const double nf = static_cast<double>(sf.size());
    const double ng = static_cast<double>(sg.size());
    const auto ctx_f = resolve_line(sf, line_f);
    const auto ctx_g = resolve_line(sg, line_g);

    test_result r;
    r.kind = "wald";
    r.df = d;
    for (const auto& m : measures) {
        r.estimate_f.push_back(j_fixed(sf, m, ctx_f.z_hat));
        r.estimate_g.push_back(j_fixed(sg, m, ctx_g.z_hat));
    }
    const cov_matrix cf = gamma_matrix(sf, measures, ctx_f, cmode, amode);
    const cov_matrix cg = gamma_matrix(sg, measures, ctx_g, cmode, amode);
    for (std::size_t i = 0; i < d; ++i) {
        if (!cf.diag_nonneg[i])
            throw degenerate_error("variance estimate for " +
                                   measures[i].name() +
                                   " is negative in the first sample");
        if (!cg.diag_nonneg[i])
            throw degenerate_error("variance estimate for " +
                                   measures[i].name() +
                                   " is negative in the second sample");
        r.variance_f.push_back(cf.at(i, i));
        r.variance_g.push_back(cg.at(i, i));
    }

    std::vector<double> pooled(d * d, 0.0);
    std::vector<double> diff(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        diff[i] = r.estimate_f[i] - coeffs[i] * r.estimate_g[i];
        for (std::size_t j = 0; j < d; ++j)
            pooled[i * d + j] = cf.at(i, j) / nf +
                                coeffs[i] * coeffs[j] * cg.at(i, j) / ng;
    }
    r.pooled = pooled;

    const auto x = solve_spd(pooled, d, diff, measures);
    double w = 0.0;
    for (std::size_t i = 0; i < d; ++i) w += diff[i] * x[i];
    if (w < 0.0)
        throw degenerate_error("wald quadratic form came out negative (" +
                               std::to_string(w) + ")");
    r.statistic = w;
    r.p_value = 1.0 - chisq_cdf(w, static_cast<int>(d));
    fill_rejections(r);
    return r;
}

}  // namespace povline
