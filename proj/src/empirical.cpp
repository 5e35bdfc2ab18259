#include "povline/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "povline/errors.hpp"
#include "povline/special.hpp"

namespace povline {

sample::sample(std::vector<double> sorted) : values_(std::move(sorted)) {
    mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) /
            static_cast<double>(values_.size());
}

sample sample::from_values(std::vector<double> raw) {
    if (raw.empty()) throw validation_error("sample is empty");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i]))
            throw validation_error("income at position " + std::to_string(i + 1) +
                                   " is not finite");
        if (raw[i] <= 0.0)
            throw validation_error("income at position " + std::to_string(i + 1) +
                                   " is " + std::to_string(raw[i]) +
                                   "; incomes must be positive");
    }
    std::sort(raw.begin(), raw.end());
    return sample(std::move(raw));
}

sample sample::from_sorted(std::vector<double> sorted) {
    return sample(std::move(sorted));
}

std::size_t sample::count_at_or_below(double y) const {
    return static_cast<std::size_t>(
        std::upper_bound(values_.begin(), values_.end(), y) - values_.begin());
}

double sample::ecdf(double y) const {
    return static_cast<double>(count_at_or_below(y)) /
           static_cast<double>(values_.size());
}

double sample::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("quantile level must lie in (0,1), got " +
                               std::to_string(p));
    const auto n = static_cast<double>(values_.size());
    // Nudge guards against 0.75 * 4 = 3.0000000000000004 style roundoff.
    auto j = static_cast<std::size_t>(std::ceil(n * p - 1e-12));
    j = std::clamp<std::size_t>(j, 1, values_.size());
    return values_[j - 1];
}

double sample::stddev() const {
    if (values_.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : values_) ss += (v - mean_) * (v - mean_);
    return std::sqrt(ss / static_cast<double>(values_.size() - 1));
}

double sample::iqr() const { return quantile(0.75) - quantile(0.25); }

double sample::silverman_bandwidth() const {
    const double sd = stddev();
    const double spread = iqr() / 1.34;
    double scale = (spread > 0.0) ? std::min(sd, spread) : sd;
    if (!(scale > 0.0))
        throw degenerate_error("sample has no spread; cannot pick a bandwidth");
    return 1.06 * scale *
           std::pow(static_cast<double>(values_.size()), -0.2);
}

double sample::kde_density(double y, double h) const {
    if (!(h > 0.0))
        throw validation_error("bandwidth must be positive, got " +
                               std::to_string(h));
    double s = 0.0;
    for (double v : values_) s += normal_pdf((y - v) / h);
    return s / (static_cast<double>(values_.size()) * h);
}

double sample::kde_density(double y) const {
    return kde_density(y, silverman_bandwidth());
}

}  // namespace povline
