#pragma once

#include <string>
#include <vector>

#include "povline/distribution.hpp"
#include "povline/empirical.hpp"

namespace povline {

// ĝ(y): kernel estimate from the sample unless an analytic model is given.
double density_at(const sample& s, double y, const distribution* model = nullptr);

// A poverty-line rule: a fixed threshold, a fraction of the mean, or a
// fraction of a quantile. Carries the per-observation linearization term
// zeta that feeds the relative-line variance corrections.
class line_spec {
  public:
    enum class kind { fixed, fraction_of_mean, fraction_of_quantile };

    static line_spec fixed(double z);
    static line_spec fraction_of_mean(double k);
    static line_spec fraction_of_quantile(double k, double p);

    // fixed:<z> | mean:<k> | quantile:<p>:<k> | median:<k>
    static line_spec parse(const std::string& text);
    static const char* grammar();

    kind type() const { return kind_; }
    bool is_fixed() const { return kind_ == kind::fixed; }
    double fraction() const { return k_; }
    double level() const { return p_; }
    const std::string& name() const { return name_; }

    double estimate(const sample& s) const;
    double theoretical(const distribution& d) const;

    // zeta(Y_j) for every observation, in sorted sample order. The quantile
    // rule divides by the density at the sample quantile: kernel-estimated by
    // default, analytic when a model is supplied.
    std::vector<double> influence(const sample& s,
                                  const distribution* model = nullptr) const;

  private:
    line_spec(kind t, double k, double p);
    kind kind_;
    double k_;  // threshold for fixed, fraction otherwise
    double p_;  // quantile level, only for fraction_of_quantile
    std::string name_;
};

}  // namespace povline
