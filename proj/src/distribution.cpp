#include "povline/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "povline/errors.hpp"
#include "povline/special.hpp"

namespace povline {
namespace {

double parse_number(const std::string& part, const char* what) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size())
        throw validation_error(std::string("cannot parse ") + what + " '" + part +
                               "'");
    return out;
}

std::vector<std::string> split_colon(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(':', start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

distribution::distribution(family kind, double p1, double p2)
    : kind_(kind), p1_(p1), p2_(p2) {}

distribution distribution::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw validation_error("exponential rate must be positive");
    return distribution(family::exponential, rate, 0.0);
}

distribution distribution::lognormal(double mu, double sigma) {
    if (!std::isfinite(mu))
        throw validation_error("lognormal mu must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw validation_error("lognormal sigma must be positive");
    return distribution(family::lognormal, mu, sigma);
}

distribution distribution::parse(const std::string& text) {
    auto parts = split_colon(text);
    if (parts[0] == "exp") {
        if (parts.size() != 2)
            throw validation_error("expected exp:<rate>, got '" + text + "'");
        return exponential(parse_number(parts[1], "rate"));
    }
    if (parts[0] == "lognormal") {
        if (parts.size() != 3)
            throw validation_error("expected lognormal:<mu>:<sigma>, got '" +
                                   text + "'");
        return lognormal(parse_number(parts[1], "mu"),
                         parse_number(parts[2], "sigma"));
    }
    throw validation_error("unknown distribution '" + text + "'; expected " +
                           grammar());
}

std::string distribution::grammar() {
    return "exp:<rate> | lognormal:<mu>:<sigma>";
}

std::string distribution::name() const {
    if (kind_ == family::exponential)
        return "exp:" + std::to_string(p1_);
    return "lognormal:" + std::to_string(p1_) + ":" + std::to_string(p2_);
}

double distribution::pdf(double y) const {
    if (y <= 0.0) return 0.0;
    if (kind_ == family::exponential) return p1_ * std::exp(-p1_ * y);
    const double t = (std::log(y) - p1_) / p2_;
    return normal_pdf(t) / (y * p2_);
}

double distribution::cdf(double y) const {
    if (y <= 0.0) return 0.0;
    if (kind_ == family::exponential) return -std::expm1(-p1_ * y);
    return normal_cdf((std::log(y) - p1_) / p2_);
}

double distribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("quantile level must lie in (0,1)");
    if (kind_ == family::exponential) return -std::log1p(-p) / p1_;
    return std::exp(p1_ + p2_ * normal_quantile(p));
}

double distribution::mean() const {
    if (kind_ == family::exponential) return 1.0 / p1_;
    return std::exp(p1_ + 0.5 * p2_ * p2_);
}

double distribution::draw(rng_stream& rng) const {
    const double u = rng.uniform01();
    if (kind_ == family::exponential) return -std::log(u) / p1_;
    return std::exp(p1_ + p2_ * normal_quantile(u));
}

std::vector<double> distribution::draw_sorted(rng_stream& rng,
                                              std::size_t n) const {
    std::vector<double> out(n);
    for (auto& v : out) v = draw(rng);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace povline
