#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace povline {

enum class family { fgt, sen, shorrocks, kakwani, watts, custom };

// Exact evaluation callbacks for a user-registered measure. No numerical
// differentiation fallback: the covariance formulas need exact partials.
struct measure_funcs {
    std::function<double(double, double)> w;      // (u, v)
    std::function<double(double, double)> w_du;
    std::function<double(double, double)> w_dv;
    std::function<double(double, double)> f;      // (y, z)
    std::function<double(double, double)> f_dy;
    std::function<double(double, double)> f_dz;
};

// A poverty measure: rank weight w(u,v) on [0,1]^2 and deprivation f(y,z)
// on 0 < y <= z, plus their first-order partials.
class measure {
  public:
    static measure fgt(double alpha);
    static measure sen();
    static measure shorrocks();
    static measure kakwani(double k);
    static measure watts();
    static measure custom(std::string name, measure_funcs funcs, bool weight_is_unit = false);

    // Grammar: fgt:<alpha> | sen | shorrocks | kakwani:<k> | watts
    static measure parse(std::string_view text);
    static const char* grammar();

    double weight(double u, double v) const;
    double weight_du(double u, double v) const;
    double weight_dv(double u, double v) const;
    double deprivation(double y, double z) const;
    double deprivation_dy(double y, double z) const;
    double deprivation_dz(double y, double z) const;

    // True when w == 1 identically (the additively decomposable case).
    bool unit_weight() const { return unit_weight_; }

    family kind() const { return family_; }
    double alpha() const { return alpha_; }
    double order() const { return order_; }
    const std::string& name() const { return name_; }

  private:
    measure() = default;

    family family_ = family::custom;
    double alpha_ = 0.0;   // fgt exponent
    double order_ = 0.0;   // kakwani order
    bool unit_weight_ = false;
    std::string name_;
    measure_funcs funcs_;  // only set for custom

    void check_weight_domain(double u, double v) const;
    void check_deprivation_domain(double y, double z) const;
};

}  // namespace povline
