#include "povline/estimation.hpp"

#include <cmath>
#include <string>

#include "povline/errors.hpp"

namespace povline {

double j_fixed(const sample& s, const measure& m, double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw validation_error("index: threshold must be positive, got " +
                               std::to_string(z));
    const auto& y = s.values();
    const auto n = static_cast<double>(y.size());
    const auto q = s.count_at_or_below(z);
    const double v = static_cast<double>(q) / n;
    double acc = 0.0;
    for (std::size_t j = 1; j <= q; ++j)
        acc += m.weight(static_cast<double>(j) / n, v) * m.deprivation(y[j - 1], z);
    return acc / n;
}

double j_relative(const sample& s, const measure& m, const line_spec& line) {
    return j_fixed(s, m, line.estimate(s));
}

a_mode parse_a_mode(const std::string& text) {
    if (text == "density") return a_mode::density;
    if (text == "raw") return a_mode::raw;
    throw validation_error("unknown a-mode '" + text + "'; expected density | raw");
}

const char* to_string(a_mode mode) {
    return mode == a_mode::density ? "density" : "raw";
}

double a_factor(const sample& s, const measure& m, double z_hat, double g_at_z,
                a_mode mode) {
    if (!(z_hat > 0.0))
        throw validation_error("a_factor: threshold must be positive");
    if (g_at_z < 0.0)
        throw validation_error("a_factor: density value must be nonnegative");
    const auto& y = s.values();
    const auto n = static_cast<double>(y.size());
    const auto q = s.count_at_or_below(z_hat);
    const double v = static_cast<double>(q) / n;
    const double dens = (mode == a_mode::density) ? g_at_z : 1.0;
    double acc = 0.0;
    for (std::size_t i = 1; i <= q; ++i) {
        const double u = static_cast<double>(i) / n;
        acc += m.weight_dv(u, v) * m.deprivation(y[i - 1], z_hat) * dens +
               m.deprivation_dz(y[i - 1], z_hat) * m.weight(u, v);
    }
    return acc / n;
}

namespace {

struct integrand {
    const distribution& d;
    const measure& m;
    double z;
    double gz;  // G(z), the v argument of the weight

    double operator()(double y) const {
        return m.weight(d.cdf(y), gz) * m.deprivation(y, z) * d.pdf(y);
    }
};

double simpson(const integrand& f, double a, double b, double fa, double fm,
               double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const integrand& f, double a, double b, double fa, double fm,
                double fb, double whole, double tol, int depth) {
    const double m1 = 0.5 * (a + b);
    const double lm = 0.5 * (a + m1);
    const double rm = 0.5 * (m1 + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m1, fa, flm, fm);
    const double right = simpson(f, m1, b, fm, frm, fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth >= 60)
        throw degenerate_error("quadrature failed to converge on [" +
                               std::to_string(a) + ", " + std::to_string(b) + "]");
    return adaptive(f, a, m1, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive(f, m1, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double j_theoretical(const distribution& d, const measure& m, double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw validation_error("index: threshold must be positive");
    // Start just inside the support; keeps the log singularity of the Watts
    // form integrable and costs less mass than the tolerance.
    const double lo = d.quantile(1e-12);
    if (z <= lo) return 0.0;
    const integrand f{d, m, z, d.cdf(z)};
    const double fa = f(lo);
    const double fb = f(z);
    const double fm = f(0.5 * (lo + z));
    const double whole = simpson(f, lo, z, fa, fm, fb);
    return adaptive(f, lo, z, fa, fm, fb, whole, 1e-10, 0);
}

double j_theoretical(const distribution& d, const measure& m,
                     const line_spec& line) {
    return j_theoretical(d, m, line.theoretical(d));
}

}  // namespace povline
