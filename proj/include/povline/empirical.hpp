#pragma once

#include <cstddef>
#include <vector>

namespace povline {

// Validated, ascending income data. All evaluation is read-only after
// construction, so instances can be shared across threads freely.
class sample {
  public:
    // Sorts a copy; rejects empty input and nonpositive or non-finite entries.
    static sample from_values(std::vector<double> raw);

    // Trusted fast path for already validated, sorted data (simulation).
    static sample from_sorted(std::vector<double> sorted);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    // (# values <= y) / n, right-continuous.
    double ecdf(double y) const;
    std::size_t count_at_or_below(double y) const;

    // Left-continuous generalized inverse: Y_{ceil(np)}, p in (0,1).
    double quantile(double p) const;

    double mean() const { return mean_; }
    double stddev() const;  // n-1 denominator
    double iqr() const;     // quantile(0.75) - quantile(0.25)

    // 1.06 * min(sd, iqr/1.34) * n^{-1/5}; an all-equal sample has no scale
    // and is rejected. A zero iqr alone falls back to the sd.
    double silverman_bandwidth() const;

    // Gaussian kernel density estimate at y with bandwidth h.
    double kde_density(double y, double h) const;
    double kde_density(double y) const;  // silverman bandwidth

  private:
    explicit sample(std::vector<double> sorted);
    std::vector<double> values_;
    double mean_ = 0.0;
};

}  // namespace povline
