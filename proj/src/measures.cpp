#include "povline/measures.hpp"

#include <cmath>
#include <charconv>
#include <cstdio>

#include "povline/errors.hpp"

namespace povline {
namespace {

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

measure measure::fgt(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error("fgt: alpha must be a nonnegative real");
    measure m;
    m.family_ = family::fgt;
    m.alpha_ = alpha;
    m.unit_weight_ = true;
    m.name_ = "fgt:" + short_number(alpha);
    return m;
}

measure measure::sen() {
    measure m;
    m.family_ = family::sen;
    m.name_ = "sen";
    return m;
}

measure measure::shorrocks() {
    measure m;
    m.family_ = family::shorrocks;
    m.name_ = "shorrocks";
    return m;
}

measure measure::kakwani(double k) {
    if (!(k >= 1.0) || !std::isfinite(k))
        throw validation_error("kakwani: order k must be >= 1");
    measure m;
    m.family_ = family::kakwani;
    m.order_ = k;
    m.name_ = "kakwani:" + short_number(k);
    return m;
}

measure measure::watts() {
    measure m;
    m.family_ = family::watts;
    m.unit_weight_ = true;
    m.name_ = "watts";
    return m;
}

measure measure::custom(std::string name, measure_funcs funcs, bool weight_is_unit) {
    if (!funcs.w || !funcs.w_du || !funcs.w_dv || !funcs.f || !funcs.f_dy || !funcs.f_dz)
        throw validation_error("custom measure: all six callbacks are required");
    measure m;
    m.family_ = family::custom;
    m.unit_weight_ = weight_is_unit;
    m.name_ = std::move(name);
    m.funcs_ = std::move(funcs);
    return m;
}

const char* measure::grammar() {
    return "fgt:<alpha> | sen | shorrocks | kakwani:<k> | watts";
}

measure measure::parse(std::string_view text) {
    auto num = [&](std::string_view s, const char* what) {
        double v{};
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw validation_error(std::string("measure: bad ") + what + " in '" +
                                   std::string(text) + "'; grammar: " + grammar());
        return v;
    };
    if (text == "sen") return sen();
    if (text == "shorrocks") return shorrocks();
    if (text == "watts") return watts();
    if (text.rfind("fgt:", 0) == 0) {
        auto m = fgt(num(text.substr(4), "alpha"));
        m.name_ = std::string(text);
        return m;
    }
    if (text.rfind("kakwani:", 0) == 0) {
        auto m = kakwani(num(text.substr(8), "order"));
        m.name_ = std::string(text);
        return m;
    }
    throw validation_error("unknown measure '" + std::string(text) +
                           "'; grammar: " + grammar());
}

void measure::check_weight_domain(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0))
        throw validation_error("weight: u and v must lie in [0,1]");
    if (family_ == family::sen || family_ == family::kakwani) {
        if (v == 0.0) throw validation_error("weight: v = 0 not allowed for " + name_);
        if (u > v) throw validation_error("weight: u > v not allowed for " + name_);
    }
}

void measure::check_deprivation_domain(double y, double z) const {
    if (!(y > 0.0)) throw validation_error("deprivation: income y must be positive");
    if (!(z > 0.0)) throw validation_error("deprivation: line z must be positive");
    if (y > z) throw validation_error("deprivation: y must not exceed z");
}

double measure::weight(double u, double v) const {
    check_weight_domain(u, v);
    switch (family_) {
        case family::fgt:
        case family::watts: return 1.0;
        case family::sen: return 2.0 * (1.0 - u / v);
        case family::shorrocks: return 2.0 * (1.0 - u);
        case family::kakwani: return (order_ + 1.0) * std::pow(1.0 - u / v, order_);
        case family::custom: return funcs_.w(u, v);
    }
    return 0.0;
}

double measure::weight_du(double u, double v) const {
    check_weight_domain(u, v);
    switch (family_) {
        case family::fgt:
        case family::watts: return 0.0;
        case family::sen: return -2.0 / v;
        case family::shorrocks: return -2.0;
        case family::kakwani:
            return -order_ * (order_ + 1.0) * std::pow(1.0 - u / v, order_ - 1.0) / v;
        case family::custom: return funcs_.w_du(u, v);
    }
    return 0.0;
}

double measure::weight_dv(double u, double v) const {
    check_weight_domain(u, v);
    switch (family_) {
        case family::fgt:
        case family::watts:
        case family::shorrocks: return 0.0;
        case family::sen: return 2.0 * u / (v * v);
        case family::kakwani:
            return order_ * (order_ + 1.0) * std::pow(1.0 - u / v, order_ - 1.0) * u / (v * v);
        case family::custom: return funcs_.w_dv(u, v);
    }
    return 0.0;
}

double measure::deprivation(double y, double z) const {
    check_deprivation_domain(y, z);
    switch (family_) {
        case family::fgt:
            return alpha_ == 0.0 ? 1.0 : std::pow(1.0 - y / z, alpha_);
        case family::sen:
        case family::shorrocks: return 1.0 - y / z;
        case family::kakwani: return std::pow(1.0 - y / z, order_);
        case family::watts: return std::log(z / y);
        case family::custom: return funcs_.f(y, z);
    }
    return 0.0;
}

double measure::deprivation_dy(double y, double z) const {
    check_deprivation_domain(y, z);
    switch (family_) {
        case family::fgt: {
            if (alpha_ == 0.0) return 0.0;
            if (alpha_ < 1.0 && y == z)
                throw degenerate_error("fgt deprivation derivative is non-finite at y = z for alpha in (0,1)");
            return -alpha_ * std::pow(1.0 - y / z, alpha_ - 1.0) / z;
        }
        case family::sen:
        case family::shorrocks: return -1.0 / z;
        case family::kakwani: return -order_ * std::pow(1.0 - y / z, order_ - 1.0) / z;
        case family::watts: return -1.0 / y;
        case family::custom: return funcs_.f_dy(y, z);
    }
    return 0.0;
}

double measure::deprivation_dz(double y, double z) const {
    check_deprivation_domain(y, z);
    switch (family_) {
        case family::fgt: {
            if (alpha_ == 0.0) return 0.0;
            if (alpha_ < 1.0 && y == z)
                throw degenerate_error("fgt deprivation derivative is non-finite at y = z for alpha in (0,1)");
            return alpha_ * std::pow(1.0 - y / z, alpha_ - 1.0) * y / (z * z);
        }
        case family::sen:
        case family::shorrocks: return y / (z * z);
        case family::kakwani: return order_ * std::pow(1.0 - y / z, order_ - 1.0) * y / (z * z);
        case family::watts: return 1.0 / z;
        case family::custom: return funcs_.f_dz(y, z);
    }
    return 0.0;
}

}  // namespace povline
