#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "povline/rng.hpp"

namespace povline {

// Income models used by the simulation driver and by closed-form index
// evaluation. Both are supported on (0, inf).
class distribution {
  public:
    enum class family { exponential, lognormal };

    static distribution exponential(double rate);
    static distribution lognormal(double mu, double sigma);

    // "exp:<rate>" or "lognormal:<mu>:<sigma>"
    static distribution parse(const std::string& text);
    static std::string grammar();

    family kind() const { return kind_; }
    std::string name() const;

    double pdf(double y) const;
    double cdf(double y) const;
    double quantile(double p) const;
    double mean() const;

    double draw(rng_stream& rng) const;
    std::vector<double> draw_sorted(rng_stream& rng, std::size_t n) const;

  private:
    distribution(family kind, double p1, double p2);
    family kind_;
    double p1_;  // rate, or mu
    double p2_;  // unused, or sigma
};

}  // namespace povline
