#include "povline/special.hpp"

#include <cmath>
#include <limits>

#include "povline/errors.hpp"

namespace povline {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
constexpr double sqrt_2pi = 2.50662827463100050242;
}  // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / sqrt_2pi; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * inv_sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw validation_error("normal_quantile: p must lie in (0,1)");
    // Acklam's rational approximation, then one Halley step against erfc.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double e = normal_cdf(x) - p;
    double u = e * sqrt_2pi * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

namespace {

double gamma_p_series(double s, double x) {
    double ap = s, sum = 1.0 / s, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw degenerate_error("gamma_p: series failed to converge");
}

// Continued fraction for Q(s,x) via modified Lentz.
double gamma_q_cf(double s, double x) {
    const double fpmin = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - s, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw degenerate_error("gamma_p: continued fraction failed to converge");
}

}  // namespace

double gamma_p(double s, double x) {
    if (s <= 0.0 || x < 0.0) throw validation_error("gamma_p: need s > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    return x < s + 1.0 ? gamma_p_series(s, x) : 1.0 - gamma_q_cf(s, x);
}

double chisq_cdf(double x, int df) {
    if (df < 1) throw validation_error("chisq_cdf: df must be >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * df, 0.5 * x);
}

double ks_p_value(double d, std::size_t n) {
    if (d <= 0.0) return 1.0;
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * d;
    double p;
    if (lambda < 1.18) {
        // the alternating tail series loses all precision here; use the
        // dual theta series, which needs the odd squares 1, 9, 25, 49 only
        const double y = std::exp(-1.2337005501361697 / (lambda * lambda));
        const double below = sqrt_2pi / lambda *
                             (y + std::pow(y, 9.0) + std::pow(y, 25.0) +
                              std::pow(y, 49.0));
        p = 1.0 - below;
    } else {
        double sum = 0.0;
        double sign = 1.0;
        for (int j = 1; j <= 200; ++j) {
            double term = std::exp(-2.0 * j * j * lambda * lambda);
            sum += sign * term;
            if (term < 1e-14) break;
            sign = -sign;
        }
        p = 2.0 * sum;
    }
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

}  // namespace povline
